#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bubblecast/backtest.hpp"
#include "bubblecast/events.hpp"

namespace bubblecast {

/// One signals-file row as written by the scan command. Field order is
/// fixed: end_date,end_index,close,p0,px,avg_return,market_return,
/// instability_price,signal,diagnostics,gap. Optionals are empty cells.
struct ScanRecord {
    Date end_date;
    std::size_t end_index = 0;
    double close = 0.0;
    double base_price = 0.0;
    double current_price = 0.0;
    std::optional<double> average_return;
    double market_return = 0.0;
    std::optional<double> instability_price;
    SignalDirection signal = SignalDirection::Invalid;
    std::string diagnostics;
    std::optional<double> gap;
};

void write_signals_csv(const SignalSeries& signals, std::ostream& out);
void write_signals_csv(const SignalSeries& signals, const std::filesystem::path& path);

std::vector<ScanRecord> read_signals_csv(const std::filesystem::path& path);

std::vector<SignalMark> to_marks(const std::vector<ScanRecord>& records);

/// JSON mirrors of the library types, with 15-significant-digit numbers and
/// a fixed field order. Optionals become null.
std::string assessment_to_json(const WindowAssessment& assessment);
std::string signals_to_json(const SignalSeries& signals);
std::string report_to_json(const EvaluationReport& report);

/// Plain-text table of the evaluation report for terminal use; post-event
/// echo signals get their own column so they can be discounted by eye.
std::string report_to_table(const EvaluationReport& report);

}  // namespace bubblecast
