#pragma once

#include <cstddef>
#include <vector>

#include "bubblecast/market_series.hpp"
#include "bubblecast/model.hpp"

namespace bubblecast {

struct SignalEntry {
    std::size_t window_end_index = 0;  // index of the window's last row in the scanned series
    Date window_end_date;
    double close = 0.0;
    WindowAssessment assessment;
};

/// Product of a rolling scan: one assessment per contiguous window,
/// strictly increasing in window_end_index.
struct SignalSeries {
    std::size_t window_length = 0;
    std::vector<SignalEntry> entries;
};

/// Assesses every window of window_length consecutive rows, advancing one
/// row at a time. threads > 1 splits the windows across worker threads;
/// the result is identical to the sequential order either way. A series
/// shorter than the window yields an empty SignalSeries.
SignalSeries scan(const MarketSeries& series, std::size_t window_length,
                  const ModelConfig& config = {}, unsigned threads = 1);

struct ScanSummary {
    std::size_t total = 0;
    std::size_t down = 0;
    std::size_t up = 0;
    std::size_t invalid = 0;
    double down_fraction = 0.0;
    double up_fraction = 0.0;
    double invalid_fraction = 0.0;
    std::size_t longest_down_streak = 0;
    // Over entries where the model produced a return gap.
    double gap_min = 0.0;
    double gap_median = 0.0;
    double gap_max = 0.0;
    std::size_t gap_count = 0;
};

ScanSummary summarize(const SignalSeries& signals);

}  // namespace bubblecast
