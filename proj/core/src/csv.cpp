#include "bubblecast/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>

#include "bubblecast/format.hpp"

namespace bubblecast {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r' || i + 1 != line.size()) {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

// Empty cell -> NaN ("missing", dropped later by the cleaner).
// Non-numeric text -> nullopt (hard parse error).
std::optional<double> parse_number(const std::string& raw) {
    std::string cleaned;
    cleaned.reserve(raw.size());
    for (char c : raw) {
        if (c != ',' && c != ' ') cleaned.push_back(c);
    }
    if (cleaned.empty()) return std::numeric_limits<double>::quiet_NaN();
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(cleaned.c_str(), &end);
    if (end != cleaned.c_str() + cleaned.size() || errno == ERANGE) return std::nullopt;
    return value;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return i;
    }
    throw MissingColumnError(path, name);
}

}  // namespace

MarketSeries load_csv(const std::filesystem::path& path, const ColumnMap& columns) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());

    std::string line;
    std::size_t line_number = 0;
    // Skip leading blank lines before the header.
    while (std::getline(in, line)) {
        ++line_number;
        if (!trim(line).empty()) break;
    }
    if (line_number == 0 || trim(line).empty()) throw EmptyFileError(path.string());

    const auto header = split_csv_line(line);
    const std::size_t date_col = find_column(header, columns.date, path.string());
    const std::size_t price_col = find_column(header, columns.price, path.string());
    const std::size_t volume_col = find_column(header, columns.volume, path.string());

    MarketSeries series;
    series.name = path.stem().string();
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::size_t needed = std::max({date_col, price_col, volume_col});
        if (fields.size() <= needed)
            throw UnparsableRowError(line_number, "row", "expected " + std::to_string(needed + 1) +
                                                             " fields, got " + std::to_string(fields.size()));

        const std::string date_text = trim(fields[date_col]);
        const auto date = parse_date(date_text, columns.date_format);
        if (!date) throw UnparsableRowError(line_number, columns.date, date_text);

        const auto close = parse_number(fields[price_col]);
        if (!close) throw UnparsableRowError(line_number, columns.price, trim(fields[price_col]));
        const auto volume = parse_number(fields[volume_col]);
        if (!volume) throw UnparsableRowError(line_number, columns.volume, trim(fields[volume_col]));

        series.rows.push_back(MarketRow{*date, *close, *volume});
    }
    return series;
}

void write_csv(const MarketSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path.string());
    out << "Date,Close,Volume\n";
    for (const auto& row : series.rows) {
        out << row.date.to_string() << ',' << format_number(row.close) << ','
            << format_number(row.volume) << '\n';
    }
    if (!out) throw CsvError("write failed for " + path.string());
}

}  // namespace bubblecast
