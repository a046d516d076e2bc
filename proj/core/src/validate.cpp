#include "bubblecast/validate.hpp"

#include <cmath>
#include <optional>

namespace bubblecast {

std::string to_string(DropReason reason) {
    switch (reason) {
        case DropReason::MissingField: return "MISSING_FIELD";
        case DropReason::NonPositiveClose: return "NONPOSITIVE_CLOSE";
        case DropReason::NegativeVolume: return "NEGATIVE_VOLUME";
        case DropReason::ZeroVolume: return "ZERO_VOLUME";
        case DropReason::DuplicateDate: return "DUPLICATE_DATE";
    }
    return "UNKNOWN";
}

std::pair<MarketSeries, CleaningReport> validate_series(const MarketSeries& series,
                                                        const CleaningPolicy& policy) {
    MarketSeries cleaned;
    cleaned.name = series.name;
    cleaned.rows.reserve(series.rows.size());

    CleaningReport report;
    report.input_rows = series.rows.size();

    std::optional<Date> previous_date;
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const auto& row = series.rows[i];
        if (previous_date) {
            if (row.date < *previous_date) throw NonMonotonicDatesError(i, row.date);
            if (row.date == *previous_date) {
                report.dropped.push_back({i, row.date, DropReason::DuplicateDate});
                continue;
            }
        }
        previous_date = row.date;

        if (std::isnan(row.close) || std::isnan(row.volume)) {
            report.dropped.push_back({i, row.date, DropReason::MissingField});
        } else if (row.close <= 0.0) {
            report.dropped.push_back({i, row.date, DropReason::NonPositiveClose});
        } else if (row.volume < 0.0) {
            report.dropped.push_back({i, row.date, DropReason::NegativeVolume});
        } else if (row.volume == 0.0 && policy.drop_zero_volume) {
            report.dropped.push_back({i, row.date, DropReason::ZeroVolume});
        } else {
            cleaned.rows.push_back(row);
        }
    }
    report.retained_rows = cleaned.rows.size();
    return {std::move(cleaned), report};
}

}  // namespace bubblecast
