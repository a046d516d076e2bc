#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bubblecast/model.hpp"

namespace bubblecast {

struct ChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartOptions {
    double width = 1600.0;
    double height = 600.0;
    double margin = 60.0;
    double offset_fraction = 0.02;  // signal overlay offset as a fraction of the price range
};

/// Renders the price series as a black polyline and the signal overlay as
/// blue polyline segments: above the price where the signal is Up, below
/// where Down; Invalid stretches break the overlay. marks pair a price-row
/// index with a direction and must be sorted, in range, and refer to
/// indices of `closes`. Linear axes, price autoscaled to the canvas.
std::string render_overlay_chart(const std::vector<double>& closes,
                                 const std::vector<std::pair<std::size_t, SignalDirection>>& marks,
                                 const ChartOptions& options = {});

}  // namespace bubblecast
