#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubblecast/regression.hpp"

namespace bubblecast {

struct DegenerateDenominatorError : ModelError {
    DegenerateDenominatorError()
        : ModelError("modeled volume integrates to a non-positive total over the window") {}
};

struct InvalidSearchConfigError : ModelError {
    using ModelError::ModelError;
};

/// Price interval of one window: the pre-bubble base price and the price
/// at assessment time. Returns are gross ratios against base_price.
struct WindowBounds {
    double base_price = 0.0;     // p0 in outputs
    double current_price = 0.0;  // px in outputs
};

/// Gross market return current/base (1+R format).
double market_return(const WindowBounds& bounds);

/// Gross return of a position opened at entry_price, marked at current_price.
double purchase_return(double entry_price, double current_price);

/// Average investor return over the window, integrating the per-entry-price
/// return weighted by the regression-modeled volume:
///
///   numerator   = slope * px * (px - p0) + px * intercept * ln(px / p0)
///   denominator = 0.5 * slope * (px^2 - p0^2) + intercept * (px - p0)
///
/// Result is a gross (1+R) ratio. Requires px > p0 and a strictly positive
/// denominator; otherwise throws DegenerateDenominatorError.
double average_return_closed_form(const VolumeRegression& reg, const WindowBounds& bounds);

/// Composite-trapezoid approximation of the same ratio of integrals.
/// Independent numerical route used to cross-check the closed form.
double average_return_quadrature(const VolumeRegression& reg, const WindowBounds& bounds,
                                 std::size_t steps);

/// Root-search controls for the instability price.
struct SearchConfig {
    double epsilon_rel = 1e-6;   // excludes the trivial root at the base price
    int grid_points = 512;       // logarithmic bracketing grid
    double cap_multiple = 20.0;  // scan no further than cap_multiple * current price
    double tolerance = 1e-9;     // max |p/p0 - E(R)(p)| at the returned root
    int max_iterations = 200;    // bisection refinement limit
};

/// Finds the smallest price above the base where the market return equals
/// the modeled average investor return. The search grid runs from
/// p0*(1+epsilon_rel) up to cap_multiple*px, clipped to where the modeled
/// total volume stays positive; brackets are refined by bisection.
/// Returns nullopt when no sign change exists (always the case when the
/// regression line is positive over the whole scan range). Throws
/// InvalidSearchConfigError for bad settings and
/// DegenerateDenominatorError when no scannable range exists at all.
std::optional<double> solve_instability_price(const VolumeRegression& reg,
                                              const WindowBounds& bounds,
                                              const SearchConfig& search = {});

enum class SignalDirection { Down, Up, Invalid };

std::string to_string(SignalDirection signal);

/// Per-window assessment flags, serialized in this bit order.
enum Diagnostic : std::uint32_t {
    kNegativeVolumeInRange = 1u << 0,  // fitted line dips below zero inside [p0, px]
    kNoRoot = 1u << 1,                 // no instability price within the scan range
    kFlatWindow = 1u << 2,             // every close identical
    kZeroPriceVariance = 1u << 3,      // regression undefined
    kDegenerateDenominator = 1u << 4,  // non-positive modeled total volume (includes px <= p0)
    kTooFewPoints = 1u << 5,
};

std::string diagnostics_to_string(std::uint32_t flags);

enum class BasePriceRule { MinimumClose, FirstClose };

struct ModelConfig {
    BasePriceRule base_price_rule = BasePriceRule::MinimumClose;
    std::size_t min_points = 2;
    int price_bins = 0;  // > 0 enables equal-width bin aggregation before the fit
    SearchConfig search;
};

/// Everything the model says about one window. Optional members are absent
/// when the window is Invalid (or, for instability_price, when no root
/// exists). gap = market_return - average_return.
struct WindowAssessment {
    WindowBounds bounds;
    std::optional<VolumeRegression> regression;
    std::optional<double> average_return;
    double market_return = 0.0;
    std::optional<double> instability_price;
    SignalDirection signal = SignalDirection::Invalid;
    std::uint32_t diagnostics = 0;
    std::optional<double> gap;

    bool has(Diagnostic flag) const { return (diagnostics & flag) != 0; }
};

/// Runs the whole per-window pipeline: pick bounds, fit the volume line,
/// compute average and market return, solve for the instability price and
/// derive the direction signal. Degenerate windows (flat price, too few
/// points, non-positive modeled volume) come back Invalid with a reason
/// flag instead of throwing, so rolling scans never abort.
WindowAssessment assess_window(std::span<const PricePoint> points, const ModelConfig& config = {});

}  // namespace bubblecast
