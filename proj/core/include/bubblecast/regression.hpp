#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace bubblecast {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewPointsError : ModelError {
    explicit TooFewPointsError(std::size_t n)
        : ModelError("regression needs at least 2 points, got " + std::to_string(n)) {}
};

struct ZeroPriceVarianceError : ModelError {
    ZeroPriceVarianceError() : ModelError("all prices equal; volume regression undefined") {}
};

/// One (price, volume) observation feeding the volume regression.
struct PricePoint {
    double price = 0.0;   // > 0
    double volume = 0.0;  // >= 0
};

/// Least-squares line volume = slope * price + intercept together with the
/// population (divide-by-n) summary statistics it was fitted from. The
/// coefficients always satisfy slope = correlation * sd_volume / sd_price
/// and intercept = mean_volume - slope * mean_price.
struct VolumeRegression {
    double slope = 0.0;
    double intercept = 0.0;
    double correlation = 0.0;
    double mean_price = 0.0;
    double mean_volume = 0.0;
    double sd_price = 0.0;
    double sd_volume = 0.0;
    std::size_t n_points = 0;

    double value_at(double price) const { return slope * price + intercept; }
};

/// Fits the volume-vs-price line by ordinary least squares.
/// Throws TooFewPointsError (n < 2) or ZeroPriceVarianceError (all prices
/// equal). Population moments throughout; constant volume gives
/// correlation 0 and slope 0.
VolumeRegression fit_volume_regression(std::span<const PricePoint> points);

/// Optional pre-aggregation: equal-width price bins over [min, max], volume
/// summed per bin, bin midpoint as the price. Empty bins are skipped.
std::vector<PricePoint> aggregate_price_bins(std::span<const PricePoint> points, int bin_count);

}  // namespace bubblecast
