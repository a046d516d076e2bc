#pragma once

#include <cstdint>
#include <stdexcept>

#include "bubblecast/market_series.hpp"

namespace bubblecast {

struct InvalidScenarioSpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scripted bubble-and-crash path for tests and demos. The price holds at
/// base_price, grows exponentially from bubble_start, loses
/// crash_drop_fraction of the accumulated gain in one day at crash_index,
/// then drifts. Volume follows volume_base plus volume_price_slope times
/// the price excess over base (so the slope scripts the sign of the fitted
/// regression), plus seeded noise, floored at zero. Deterministic for a
/// given spec, including the seed.
struct ScenarioSpec {
    std::size_t n_days = 300;
    double base_price = 100.0;
    std::size_t bubble_start = 100;
    std::size_t crash_index = 220;
    double growth_rate = 0.03;         // per-day log growth during the blow-off
    double crash_drop_fraction = 0.5;  // fraction of the bubble gain removed at the crash
    double volume_base = 1.0e6;
    double volume_price_slope = -2300.0;
    // Relative noise amplitude. Price jitter is half of it; volume noise is
    // a tenth of it times volume_base.
    double noise_scale = 0.6;
    std::uint64_t seed = 42;
    Date start_date{2018, 1, 1};
};

MarketSeries generate_bubble_scenario(const ScenarioSpec& spec = {});

}  // namespace bubblecast
