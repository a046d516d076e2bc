#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblecast/date.hpp"
#include "bubblecast/market_series.hpp"

namespace bubblecast {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyFileError : CsvError {
    explicit EmptyFileError(const std::string& path) : CsvError("empty CSV file: " + path) {}
};

struct MissingColumnError : CsvError {
    std::string column;
    MissingColumnError(const std::string& path, std::string col)
        : CsvError("missing column \"" + col + "\" in " + path), column(std::move(col)) {}
};

/// line is the 1-based line number in the file, header included.
struct UnparsableRowError : CsvError {
    std::size_t line;
    std::string field;
    UnparsableRowError(std::size_t line_number, std::string field_name, const std::string& value)
        : CsvError("unparsable value \"" + value + "\" for field \"" + field_name + "\" on line " +
                   std::to_string(line_number)),
          line(line_number),
          field(std::move(field_name)) {}
};

/// Header names selecting the date/price/volume columns of an OHLCV file.
struct ColumnMap {
    std::string date = "Date";
    std::string price = "Close";
    std::string volume = "Volume";
    DateFormat date_format = DateFormat::Iso8601;
};

/// Splits one CSV record into fields. Handles double-quoted fields with
/// embedded commas and doubled quotes; trims a trailing CR.
std::vector<std::string> split_csv_line(const std::string& line);

/// Loads a comma-delimited UTF-8 file with a header row. Rows are kept in
/// file order; no ordering or positivity checks happen here (see
/// validate_series). Empty numeric cells become NaN so the cleaner can
/// drop them; non-empty garbage raises UnparsableRowError. Thousands
/// separators inside numbers are stripped.
MarketSeries load_csv(const std::filesystem::path& path, const ColumnMap& columns = {});

/// Writes Date,Close,Volume with canonical 15-significant-digit numbers.
void write_csv(const MarketSeries& series, const std::filesystem::path& path);

}  // namespace bubblecast
