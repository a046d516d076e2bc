#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bubblecast/market_series.hpp"

namespace bubblecast {

struct NonMonotonicDatesError : std::runtime_error {
    std::size_t row_index;
    NonMonotonicDatesError(std::size_t index, const Date& date)
        : std::runtime_error("dates out of order at row " + std::to_string(index) + " (" +
                             date.to_string() + "); input must be sorted ascending"),
          row_index(index) {}
};

enum class DropReason {
    MissingField,      // NaN close or volume
    NonPositiveClose,  // close <= 0
    NegativeVolume,    // volume < 0
    ZeroVolume,        // volume == 0 and policy drops it
    DuplicateDate,     // same date as the previous input row; first wins
};

std::string to_string(DropReason reason);

struct DroppedRow {
    std::size_t row_index;  // 0-based index into the input series
    Date date;
    DropReason reason;
};

struct CleaningReport {
    std::size_t input_rows = 0;
    std::size_t retained_rows = 0;
    std::vector<DroppedRow> dropped;
};

struct CleaningPolicy {
    // Zero-volume days carry no weight information for the volume
    // regression, so they are removed unless asked otherwise.
    bool drop_zero_volume = true;
};

/// Enforces the series invariants: strictly increasing dates, positive
/// closes, non-negative (by default strictly positive) volumes. Descending
/// dates are a hard error; everything else is dropped and reported.
std::pair<MarketSeries, CleaningReport> validate_series(const MarketSeries& series,
                                                        const CleaningPolicy& policy = {});

}  // namespace bubblecast
