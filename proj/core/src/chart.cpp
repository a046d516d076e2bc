#include "bubblecast/chart.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bubblecast {

namespace {

std::string coord(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return std::string(buf);
}

void emit_polyline(std::ostream& out, const std::vector<std::pair<double, double>>& points,
                   const char* color) {
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) out << ' ';
        out << coord(points[i].first) << ',' << coord(points[i].second);
    }
    out << "\"/>\n";
}

}  // namespace

std::string render_overlay_chart(const std::vector<double>& closes,
                                 const std::vector<std::pair<std::size_t, SignalDirection>>& marks,
                                 const ChartOptions& options) {
    if (closes.empty()) throw ChartError("cannot chart an empty price series");
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (marks[i].first >= closes.size())
            throw ChartError("signal index " + std::to_string(marks[i].first) +
                             " outside the price series");
        if (i > 0 && marks[i].first <= marks[i - 1].first)
            throw ChartError("signal indices must be strictly increasing");
    }

    const double plot_width = options.width - 2.0 * options.margin;
    const double plot_height = options.height - 2.0 * options.margin;
    const auto [min_it, max_it] = std::minmax_element(closes.begin(), closes.end());
    const double price_min = *min_it;
    const double price_range = *max_it - *min_it;

    auto x_at = [&](std::size_t i) {
        if (closes.size() == 1) return options.margin + 0.5 * plot_width;
        return options.margin +
               plot_width * static_cast<double>(i) / static_cast<double>(closes.size() - 1);
    };
    auto y_at = [&](double price) {
        if (price_range == 0.0) return options.margin + 0.5 * plot_height;
        return options.margin + plot_height * (1.0 - (price - price_min) / price_range);
    };
    // 2% of the price range; the range maps onto the plot height, so this
    // is a fixed pixel offset.
    const double offset = options.offset_fraction * plot_height;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << coord(options.width)
        << ' ' << coord(options.height) << "\" width=\"" << coord(options.width) << "\" height=\""
        << coord(options.height) << "\">\n";

    std::vector<std::pair<double, double>> line;
    line.reserve(closes.size());
    for (std::size_t i = 0; i < closes.size(); ++i) line.emplace_back(x_at(i), y_at(closes[i]));
    emit_polyline(out, line, "black");

    std::vector<std::pair<double, double>> segment;
    auto flush = [&] {
        if (segment.size() >= 2) emit_polyline(out, segment, "blue");
        if (segment.size() == 1) {
            // Lone marks still need to be visible: draw a short dash.
            auto [x, y] = segment.front();
            emit_polyline(out, {{x - 2.0, y}, {x + 2.0, y}}, "blue");
        }
        segment.clear();
    };
    for (const auto& [index, signal] : marks) {
        if (signal == SignalDirection::Invalid) {
            flush();
            continue;
        }
        const double direction = signal == SignalDirection::Up ? -1.0 : 1.0;
        segment.emplace_back(x_at(index), y_at(closes[index]) + direction * offset);
    }
    flush();

    out << "</svg>\n";
    return out.str();
}

}  // namespace bubblecast
