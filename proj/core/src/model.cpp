#include "bubblecast/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bubblecast {

double market_return(const WindowBounds& bounds) {
    return bounds.current_price / bounds.base_price;
}

double purchase_return(double entry_price, double current_price) {
    return current_price / entry_price;
}

namespace {

// Scale for deciding the modeled-volume integral is effectively zero.
double denominator_scale(const VolumeRegression& reg, double p0, double px) {
    const double span = px - p0;
    return std::max({std::abs(0.5 * reg.slope * (px + p0) * span), std::abs(reg.intercept * span),
                     std::numeric_limits<double>::min()});
}

// Closed-form ratio of integrals, nullopt when the denominator is not
// strictly positive. ln(px/p0) goes through log1p for accuracy as px -> p0.
std::optional<double> closed_form_impl(const VolumeRegression& reg, double p0, double px) {
    if (!(px > p0) || !(p0 > 0.0)) return std::nullopt;
    const double span = px - p0;
    const double denominator = 0.5 * reg.slope * (px * px - p0 * p0) + reg.intercept * span;
    if (denominator <= 1e-12 * denominator_scale(reg, p0, px)) return std::nullopt;
    const double log_ratio = std::log1p(span / p0);
    const double numerator = reg.slope * px * span + px * reg.intercept * log_ratio;
    return numerator / denominator;
}

}  // namespace

double average_return_closed_form(const VolumeRegression& reg, const WindowBounds& bounds) {
    const auto value = closed_form_impl(reg, bounds.base_price, bounds.current_price);
    if (!value) throw DegenerateDenominatorError();
    return *value;
}

double average_return_quadrature(const VolumeRegression& reg, const WindowBounds& bounds,
                                 std::size_t steps) {
    const double p0 = bounds.base_price;
    const double px = bounds.current_price;
    if (!(px > p0) || !(p0 > 0.0)) throw DegenerateDenominatorError();
    if (steps < 2) throw ModelError("quadrature needs at least 2 steps");

    const double h = (px - p0) / static_cast<double>(steps);
    auto volume_at = [&](double p) { return reg.slope * p + reg.intercept; };
    auto weighted_at = [&](double p) { return purchase_return(p, px) * volume_at(p); };

    double numerator = 0.5 * (weighted_at(p0) + weighted_at(px));
    double denominator = 0.5 * (volume_at(p0) + volume_at(px));
    for (std::size_t i = 1; i < steps; ++i) {
        const double p = p0 + h * static_cast<double>(i);
        numerator += weighted_at(p);
        denominator += volume_at(p);
    }
    numerator *= h;
    denominator *= h;

    if (denominator <= 1e-12 * denominator_scale(reg, p0, px)) throw DegenerateDenominatorError();
    return numerator / denominator;
}

namespace {

// f(p) = p/p0 - E(R)(p): positive just above the base price, and an
// instability price is a downward crossing of zero.
std::optional<double> gap_at(const VolumeRegression& reg, double p0, double p) {
    const auto avg = closed_form_impl(reg, p0, p);
    if (!avg) return std::nullopt;
    return p / p0 - *avg;
}

}  // namespace

std::optional<double> solve_instability_price(const VolumeRegression& reg,
                                              const WindowBounds& bounds,
                                              const SearchConfig& search) {
    if (search.tolerance <= 0.0) throw InvalidSearchConfigError("solver tolerance must be > 0");
    if (search.grid_points < 2) throw InvalidSearchConfigError("solver grid needs >= 2 points");
    if (search.cap_multiple < 1.0) throw InvalidSearchConfigError("cap multiple must be >= 1");
    if (search.epsilon_rel <= 0.0) throw InvalidSearchConfigError("epsilon_rel must be > 0");
    if (search.max_iterations < 1) throw InvalidSearchConfigError("max iterations must be >= 1");

    const double p0 = bounds.base_price;
    const double lo_limit = p0 * (1.0 + search.epsilon_rel);
    double hi_limit = search.cap_multiple * bounds.current_price;

    // With a falling line the modeled total volume hits zero at a finite
    // price; past it the closed form is meaningless, so clip the scan there.
    if (reg.slope < 0.0) {
        const double singularity = -2.0 * reg.intercept / reg.slope - p0;
        hi_limit = std::min(hi_limit, singularity * (1.0 - 1e-12));
    }
    if (!(hi_limit > lo_limit)) throw DegenerateDenominatorError();

    const int n = search.grid_points;
    const double log_lo = std::log(lo_limit);
    const double log_step = (std::log(hi_limit) - log_lo) / static_cast<double>(n - 1);

    auto grid_price = [&](int i) {
        return i == n - 1 ? hi_limit : std::exp(log_lo + log_step * static_cast<double>(i));
    };

    bool any_valid = false;
    double prev_price = 0.0;
    std::optional<double> prev_gap;
    for (int i = 0; i < n; ++i) {
        const double price = grid_price(i);
        const auto gap = gap_at(reg, p0, price);
        if (gap) {
            any_valid = true;
            if (*gap == 0.0) return price;
        }
        if (prev_gap && gap && (*prev_gap > 0.0) != (*gap > 0.0)) {
            // Bisection inside [prev_price, price].
            double lo = prev_price;
            double hi = price;
            double f_lo = *prev_gap;
            double best = hi;
            double best_gap = *gap;
            for (int iter = 0; iter < search.max_iterations; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const auto f_mid = gap_at(reg, p0, mid);
                if (!f_mid) break;  // singular interior point; keep the tighter side
                if (std::abs(*f_mid) < std::abs(best_gap)) {
                    best = mid;
                    best_gap = *f_mid;
                }
                if ((f_lo > 0.0) == (*f_mid > 0.0)) {
                    lo = mid;
                    f_lo = *f_mid;
                } else {
                    hi = mid;
                }
                if (hi - lo <= 1e-15 * hi && std::abs(best_gap) <= search.tolerance) break;
            }
            if (std::abs(best_gap) <= search.tolerance) return best;
            // Residual never met the tolerance: not a usable root, keep scanning.
        }
        prev_gap = gap;
        prev_price = price;
    }
    if (!any_valid) throw DegenerateDenominatorError();
    return std::nullopt;
}

std::string to_string(SignalDirection signal) {
    switch (signal) {
        case SignalDirection::Down: return "Down";
        case SignalDirection::Up: return "Up";
        case SignalDirection::Invalid: return "Invalid";
    }
    return "Invalid";
}

std::string diagnostics_to_string(std::uint32_t flags) {
    static constexpr std::pair<Diagnostic, const char*> kNames[] = {
        {kNegativeVolumeInRange, "NEGATIVE_VOLUME_IN_RANGE"},
        {kNoRoot, "NO_ROOT"},
        {kFlatWindow, "FLAT_WINDOW"},
        {kZeroPriceVariance, "ZERO_PRICE_VARIANCE"},
        {kDegenerateDenominator, "DEGENERATE_DENOMINATOR"},
        {kTooFewPoints, "TOO_FEW_POINTS"},
    };
    std::string out;
    for (const auto& [flag, name] : kNames) {
        if ((flags & flag) == 0) continue;
        if (!out.empty()) out.push_back('|');
        out += name;
    }
    return out;
}

WindowAssessment assess_window(std::span<const PricePoint> points, const ModelConfig& config) {
    WindowAssessment result;

    if (points.size() < std::max<std::size_t>(config.min_points, 2)) {
        result.diagnostics |= kTooFewPoints;
        if (!points.empty()) {
            result.bounds = {points.front().price, points.back().price};
            result.market_return = market_return(result.bounds);
        }
        return result;
    }

    double base = points.front().price;
    if (config.base_price_rule == BasePriceRule::MinimumClose) {
        for (const auto& pt : points) base = std::min(base, pt.price);
    }
    result.bounds = {base, points.back().price};
    result.market_return = market_return(result.bounds);

    const bool flat = std::all_of(points.begin(), points.end(), [&](const PricePoint& pt) {
        return pt.price == points.front().price;
    });
    if (flat) {
        result.diagnostics |= kFlatWindow;
        return result;
    }

    std::vector<PricePoint> binned;
    std::span<const PricePoint> fit_points = points;
    if (config.price_bins > 0) {
        binned = aggregate_price_bins(points, config.price_bins);
        fit_points = binned;
    }

    try {
        result.regression = fit_volume_regression(fit_points);
    } catch (const ModelError&) {
        result.diagnostics |= kZeroPriceVariance;
        return result;
    }
    const VolumeRegression& reg = *result.regression;

    if (reg.value_at(result.bounds.base_price) < 0.0 ||
        reg.value_at(result.bounds.current_price) < 0.0) {
        result.diagnostics |= kNegativeVolumeInRange;
    }

    const auto avg = [&]() -> std::optional<double> {
        try {
            return average_return_closed_form(reg, result.bounds);
        } catch (const DegenerateDenominatorError&) {
            return std::nullopt;
        }
    }();
    if (!avg) {
        result.diagnostics |= kDegenerateDenominator;
        return result;
    }
    result.average_return = *avg;
    result.gap = result.market_return - *avg;

    try {
        result.instability_price = solve_instability_price(reg, result.bounds, config.search);
    } catch (const DegenerateDenominatorError&) {
        result.instability_price = std::nullopt;
    }

    if (result.instability_price) {
        result.signal = result.bounds.current_price >= *result.instability_price
                            ? SignalDirection::Down
                            : SignalDirection::Up;
    } else {
        result.diagnostics |= kNoRoot;
        result.signal = SignalDirection::Up;
    }
    return result;
}

}  // namespace bubblecast
