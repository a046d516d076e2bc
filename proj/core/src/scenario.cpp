#include "bubblecast/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bubblecast {

namespace {

// Uniform in [-1, 1] built from raw 53-bit draws, so the stream depends
// only on the engine and stays identical across standard libraries.
double symmetric_uniform(std::mt19937_64& rng) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

}  // namespace

MarketSeries generate_bubble_scenario(const ScenarioSpec& spec) {
    if (spec.n_days == 0) throw InvalidScenarioSpecError("n_days must be positive");
    if (!(spec.bubble_start < spec.crash_index) || !(spec.crash_index < spec.n_days))
        throw InvalidScenarioSpecError("need bubble_start < crash_index < n_days");
    if (spec.base_price <= 0.0) throw InvalidScenarioSpecError("base_price must be positive");
    if (spec.volume_base <= 0.0) throw InvalidScenarioSpecError("volume_base must be positive");
    if (!(spec.crash_drop_fraction > 0.0) || !(spec.crash_drop_fraction < 1.0))
        throw InvalidScenarioSpecError("crash_drop_fraction must lie in (0, 1)");
    if (spec.noise_scale < 0.0) throw InvalidScenarioSpecError("noise_scale must be >= 0");
    if (!spec.start_date.valid()) throw InvalidScenarioSpecError("start_date is not a valid date");

    std::mt19937_64 rng(spec.seed);
    MarketSeries series;
    series.name = "synthetic";
    series.rows.reserve(spec.n_days);

    const double peak =
        spec.base_price *
        std::exp(spec.growth_rate * static_cast<double>(spec.crash_index - spec.bubble_start));
    // The crash removes a fraction of the bubble gain, so a zero-growth
    // spec stays at the base price throughout.
    const double post_crash_level =
        spec.base_price + (1.0 - spec.crash_drop_fraction) * (peak - spec.base_price);

    for (std::size_t t = 0; t < spec.n_days; ++t) {
        double trend;
        if (t < spec.bubble_start) {
            trend = spec.base_price;
        } else if (t < spec.crash_index) {
            trend = spec.base_price *
                    std::exp(spec.growth_rate * static_cast<double>(t - spec.bubble_start));
        } else {
            // Mild post-crash downward drift.
            trend = post_crash_level *
                    std::exp(-0.25 * spec.growth_rate * static_cast<double>(t - spec.crash_index));
        }

        const double price_jitter = 0.5 * spec.noise_scale * symmetric_uniform(rng);
        const double price = std::max(trend * (1.0 + price_jitter), 1e-9 * spec.base_price);

        const double volume_trend =
            spec.volume_base + spec.volume_price_slope * (price - spec.base_price);
        const double volume_noise =
            0.1 * spec.noise_scale * spec.volume_base * symmetric_uniform(rng);
        const double volume = std::max(0.0, volume_trend + volume_noise);

        series.rows.push_back(
            MarketRow{spec.start_date.plus_days(static_cast<std::int64_t>(t)), price, volume});
    }
    return series;
}

}  // namespace bubblecast
