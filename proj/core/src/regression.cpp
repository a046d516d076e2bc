#include "bubblecast/regression.hpp"

#include <algorithm>
#include <cmath>

namespace bubblecast {

VolumeRegression fit_volume_regression(std::span<const PricePoint> points) {
    const std::size_t n = points.size();
    if (n < 2) throw TooFewPointsError(n);

    double sum_price = 0.0;
    double sum_volume = 0.0;
    for (const auto& pt : points) {
        sum_price += pt.price;
        sum_volume += pt.volume;
    }
    const double mean_price = sum_price / static_cast<double>(n);
    const double mean_volume = sum_volume / static_cast<double>(n);

    // Two-pass centered moments; population normalization.
    double ss_price = 0.0;
    double ss_volume = 0.0;
    double ss_cross = 0.0;
    for (const auto& pt : points) {
        const double dp = pt.price - mean_price;
        const double dv = pt.volume - mean_volume;
        ss_price += dp * dp;
        ss_volume += dv * dv;
        ss_cross += dp * dv;
    }
    if (ss_price == 0.0) throw ZeroPriceVarianceError();

    VolumeRegression reg;
    reg.n_points = n;
    reg.mean_price = mean_price;
    reg.mean_volume = mean_volume;
    reg.sd_price = std::sqrt(ss_price / static_cast<double>(n));
    reg.sd_volume = std::sqrt(ss_volume / static_cast<double>(n));
    reg.correlation = ss_volume == 0.0 ? 0.0 : ss_cross / std::sqrt(ss_price * ss_volume);
    reg.slope = reg.correlation * reg.sd_volume / reg.sd_price;
    reg.intercept = mean_volume - reg.slope * mean_price;
    return reg;
}

std::vector<PricePoint> aggregate_price_bins(std::span<const PricePoint> points, int bin_count) {
    if (bin_count < 1) throw ModelError("bin count must be >= 1");
    if (points.empty()) return {};

    auto [lo_it, hi_it] = std::minmax_element(
        points.begin(), points.end(),
        [](const PricePoint& a, const PricePoint& b) { return a.price < b.price; });
    const double lo = lo_it->price;
    const double hi = hi_it->price;
    if (lo == hi) return {PricePoint{lo, [&] {
                              double total = 0.0;
                              for (const auto& pt : points) total += pt.volume;
                              return total;
                          }()}};

    const double width = (hi - lo) / bin_count;
    std::vector<double> volume_sum(static_cast<std::size_t>(bin_count), 0.0);
    std::vector<bool> occupied(static_cast<std::size_t>(bin_count), false);
    for (const auto& pt : points) {
        auto bin = static_cast<std::size_t>((pt.price - lo) / width);
        bin = std::min(bin, static_cast<std::size_t>(bin_count - 1));
        volume_sum[bin] += pt.volume;
        occupied[bin] = true;
    }

    std::vector<PricePoint> bins;
    bins.reserve(static_cast<std::size_t>(bin_count));
    for (std::size_t b = 0; b < volume_sum.size(); ++b) {
        if (!occupied[b]) continue;
        bins.push_back(PricePoint{lo + (static_cast<double>(b) + 0.5) * width, volume_sum[b]});
    }
    return bins;
}

}  // namespace bubblecast
