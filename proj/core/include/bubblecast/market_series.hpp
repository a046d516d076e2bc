#pragma once

#include <string>
#include <vector>

#include "bubblecast/date.hpp"

namespace bubblecast {

/// One trading day: close price and traded volume.
/// A validated series guarantees close > 0, volume >= 0 and strictly
/// increasing dates; raw loader output may still violate any of these.
struct MarketRow {
    Date date;
    double close = 0.0;
    double volume = 0.0;
};

struct MarketSeries {
    std::string name;
    std::vector<MarketRow> rows;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
};

}  // namespace bubblecast
