#include "bubblecast/signals_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bubblecast/csv.hpp"
#include "bubblecast/format.hpp"

namespace bubblecast {

namespace {

constexpr const char* kSignalsHeader =
    "end_date,end_index,close,p0,px,avg_return,market_return,instability_price,signal,"
    "diagnostics,gap";

std::string opt_number(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string{};
}

std::optional<SignalDirection> parse_signal(const std::string& text) {
    if (text == "Down") return SignalDirection::Down;
    if (text == "Up") return SignalDirection::Up;
    if (text == "Invalid") return SignalDirection::Invalid;
    return std::nullopt;
}

double parse_double_field(const std::string& text, std::size_t line, const char* field) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
        throw UnparsableRowError(line, field, text);
    return value;
}

std::optional<double> parse_optional_field(const std::string& text, std::size_t line,
                                           const char* field) {
    if (text.empty()) return std::nullopt;
    return parse_double_field(text, line, field);
}

}  // namespace

void write_signals_csv(const SignalSeries& signals, std::ostream& out) {
    out << kSignalsHeader << '\n';
    for (const auto& entry : signals.entries) {
        const auto& a = entry.assessment;
        out << entry.window_end_date.to_string() << ',' << entry.window_end_index << ','
            << format_number(entry.close) << ',' << format_number(a.bounds.base_price) << ','
            << format_number(a.bounds.current_price) << ',' << opt_number(a.average_return) << ','
            << format_number(a.market_return) << ',' << opt_number(a.instability_price) << ','
            << to_string(a.signal) << ',' << diagnostics_to_string(a.diagnostics) << ','
            << opt_number(a.gap) << '\n';
    }
}

void write_signals_csv(const SignalSeries& signals, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path.string());
    write_signals_csv(signals, out);
    if (!out) throw CsvError("write failed for " + path.string());
}

std::vector<ScanRecord> read_signals_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw EmptyFileError(path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSignalsHeader)
        throw CsvError("unrecognized signals header in " + path.string());

    std::vector<ScanRecord> records;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 11) throw UnparsableRowError(line_number, "row", line);

        ScanRecord rec;
        const auto date = parse_date(fields[0]);
        if (!date) throw UnparsableRowError(line_number, "end_date", fields[0]);
        rec.end_date = *date;
        rec.end_index = static_cast<std::size_t>(
            parse_double_field(fields[1], line_number, "end_index"));
        rec.close = parse_double_field(fields[2], line_number, "close");
        rec.base_price = parse_double_field(fields[3], line_number, "p0");
        rec.current_price = parse_double_field(fields[4], line_number, "px");
        rec.average_return = parse_optional_field(fields[5], line_number, "avg_return");
        rec.market_return = parse_double_field(fields[6], line_number, "market_return");
        rec.instability_price = parse_optional_field(fields[7], line_number, "instability_price");
        const auto signal = parse_signal(fields[8]);
        if (!signal) throw UnparsableRowError(line_number, "signal", fields[8]);
        rec.signal = *signal;
        rec.diagnostics = fields[9];
        rec.gap = parse_optional_field(fields[10], line_number, "gap");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SignalMark> to_marks(const std::vector<ScanRecord>& records) {
    std::vector<SignalMark> marks;
    marks.reserve(records.size());
    for (const auto& rec : records) marks.push_back({rec.end_index, rec.end_date, rec.signal});
    return marks;
}

namespace {

std::string opt_json(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string("null");
}

void append_regression_json(std::ostream& out, const std::optional<VolumeRegression>& reg) {
    if (!reg) {
        out << "null";
        return;
    }
    out << "{\"slope_a\":" << format_number(reg->slope)
        << ",\"intercept_b\":" << format_number(reg->intercept)
        << ",\"corr_r\":" << format_number(reg->correlation)
        << ",\"mean_price\":" << format_number(reg->mean_price)
        << ",\"mean_volume\":" << format_number(reg->mean_volume)
        << ",\"sd_price\":" << format_number(reg->sd_price)
        << ",\"sd_volume\":" << format_number(reg->sd_volume) << ",\"n_points\":" << reg->n_points
        << "}";
}

void append_diagnostics_json(std::ostream& out, std::uint32_t flags) {
    out << '[';
    const std::string joined = diagnostics_to_string(flags);
    std::size_t start = 0;
    bool first = true;
    while (start < joined.size()) {
        auto end = joined.find('|', start);
        if (end == std::string::npos) end = joined.size();
        if (!first) out << ',';
        out << json_quote(joined.substr(start, end - start));
        first = false;
        start = end + 1;
    }
    out << ']';
}

void append_assessment_json(std::ostream& out, const WindowAssessment& a) {
    out << "{\"bounds\":{\"p0\":" << format_number(a.bounds.base_price)
        << ",\"px\":" << format_number(a.bounds.current_price) << "},\"regression\":";
    append_regression_json(out, a.regression);
    out << ",\"avg_return\":" << opt_json(a.average_return)
        << ",\"market_return\":" << format_number(a.market_return)
        << ",\"instability_price\":" << opt_json(a.instability_price)
        << ",\"signal\":" << json_quote(to_string(a.signal)) << ",\"diagnostics\":";
    append_diagnostics_json(out, a.diagnostics);
    out << ",\"gap\":" << opt_json(a.gap) << "}";
}

}  // namespace

std::string assessment_to_json(const WindowAssessment& assessment) {
    std::ostringstream out;
    append_assessment_json(out, assessment);
    return out.str();
}

std::string signals_to_json(const SignalSeries& signals) {
    std::ostringstream out;
    out << "{\"window_length\":" << signals.window_length << ",\"entries\":[";
    bool first = true;
    for (const auto& entry : signals.entries) {
        if (!first) out << ',';
        first = false;
        out << "{\"end_date\":" << json_quote(entry.window_end_date.to_string())
            << ",\"end_index\":" << entry.window_end_index
            << ",\"close\":" << format_number(entry.close) << ",\"assessment\":";
        append_assessment_json(out, entry.assessment);
        out << "}";
    }
    out << "]}";
    return out.str();
}

namespace {

std::string opt_index_json(const std::optional<std::size_t>& value) {
    return value ? std::to_string(*value) : std::string("null");
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
    std::ostringstream out;
    out << "{\"tolerance_days\":" << report.tolerance_days << ",\"events\":[";
    bool first = true;
    for (const auto& e : report.events) {
        if (!first) out << ',';
        first = false;
        out << "{\"label\":" << json_quote(e.event.label)
            << ",\"date\":" << json_quote(e.event.date.to_string())
            << ",\"out_of_range\":" << (e.out_of_range ? "true" : "false")
            << ",\"hit\":" << (e.hit ? "true" : "false")
            << ",\"event_index\":" << opt_index_json(e.event_index)
            << ",\"nearest_down_index\":" << opt_index_json(e.nearest_down_index)
            << ",\"lead_time_days\":"
            << (e.lead_time_days ? std::to_string(*e.lead_time_days) : std::string("null"))
            << ",\"first_post_down_index\":" << opt_index_json(e.first_post_down_index) << "}";
    }
    out << "],\"hit_rate\":" << format_number(report.hit_rate)
        << ",\"down_signal_fraction\":" << format_number(report.down_signal_fraction)
        << ",\"up_signal_fraction\":" << format_number(report.up_signal_fraction)
        << ",\"invalid_signal_fraction\":" << format_number(report.invalid_signal_fraction)
        << "}";
    return out.str();
}

std::string report_to_table(const EvaluationReport& report) {
    std::ostringstream out;
    out << "event            date        result  lead(days)  nearest_down  post_echo\n";
    for (const auto& e : report.events) {
        char line[160];
        std::string label = e.event.label.substr(0, 16);
        std::string result = e.out_of_range ? "n/a" : (e.hit ? "hit" : "miss");
        std::string lead = e.lead_time_days ? std::to_string(*e.lead_time_days) : "-";
        std::string nearest = e.nearest_down_index ? std::to_string(*e.nearest_down_index) : "-";
        std::string echo =
            e.first_post_down_index ? std::to_string(*e.first_post_down_index) : "-";
        std::snprintf(line, sizeof(line), "%-16s %-11s %-7s %-11s %-13s %s\n", label.c_str(),
                      e.event.date.to_string().c_str(), result.c_str(), lead.c_str(),
                      nearest.c_str(), echo.c_str());
        out << line;
    }
    char tail[200];
    std::snprintf(tail, sizeof(tail),
                  "hit_rate=%.3f down=%.4f up=%.4f invalid=%.4f (tolerance ±%d trading days)\n",
                  report.hit_rate, report.down_signal_fraction, report.up_signal_fraction,
                  report.invalid_signal_fraction, report.tolerance_days);
    out << tail;
    return out.str();
}

}  // namespace bubblecast
