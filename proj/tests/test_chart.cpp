#include <doctest.h>

#include <string>
#include <vector>

#include "bubblecast/chart.hpp"

using namespace bubblecast;

namespace {

struct Polyline {
    std::string color;
    std::vector<std::pair<double, double>> points;
};

// Minimal extraction of the polylines this project emits.
std::vector<Polyline> parse_polylines(const std::string& svg) {
    std::vector<Polyline> lines;
    std::size_t pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        Polyline line;
        const auto stroke = svg.find("stroke=\"", pos) + 8;
        line.color = svg.substr(stroke, svg.find('"', stroke) - stroke);
        const auto points_at = svg.find("points=\"", pos) + 8;
        const auto points_end = svg.find('"', points_at);
        std::string body = svg.substr(points_at, points_end - points_at);
        std::size_t cursor = 0;
        while (cursor < body.size()) {
            const auto comma = body.find(',', cursor);
            auto space = body.find(' ', comma);
            if (space == std::string::npos) space = body.size();
            line.points.emplace_back(std::stod(body.substr(cursor, comma - cursor)),
                                     std::stod(body.substr(comma + 1, space - comma - 1)));
            cursor = space + 1;
        }
        lines.push_back(std::move(line));
        pos = points_end;
    }
    return lines;
}

}  // namespace

TEST_CASE("all-up toy chart has a blue line strictly above the black one") {
    const std::vector<double> closes{10.0, 12.0, 11.0};
    const std::vector<std::pair<std::size_t, SignalDirection>> marks{
        {0, SignalDirection::Up}, {1, SignalDirection::Up}, {2, SignalDirection::Up}};
    const auto svg = render_overlay_chart(closes, marks);
    const auto lines = parse_polylines(svg);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].color == "black");
    CHECK(lines[1].color == "blue");
    REQUIRE(lines[0].points.size() == 3);
    REQUIRE(lines[1].points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(lines[1].points[i].first == doctest::Approx(lines[0].points[i].first));
        // SVG y grows downward, so "above" means a smaller y.
        CHECK(lines[1].points[i].second < lines[0].points[i].second);
    }
}

TEST_CASE("down marks sit below the price line") {
    const std::vector<double> closes{10.0, 12.0, 11.0, 9.0};
    const std::vector<std::pair<std::size_t, SignalDirection>> marks{
        {1, SignalDirection::Down}, {2, SignalDirection::Down}};
    const auto lines = parse_polylines(render_overlay_chart(closes, marks));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].points[0].second > lines[0].points[1].second);
    CHECK(lines[1].points[1].second > lines[0].points[2].second);
}

TEST_CASE("invalid marks split the overlay into segments") {
    const std::vector<double> closes{10, 11, 12, 13, 14, 15};
    const std::vector<std::pair<std::size_t, SignalDirection>> marks{
        {0, SignalDirection::Up},      {1, SignalDirection::Up}, {2, SignalDirection::Invalid},
        {3, SignalDirection::Down},    {4, SignalDirection::Down}};
    const auto lines = parse_polylines(render_overlay_chart(closes, marks));
    REQUIRE(lines.size() == 3);  // black + two blue segments
    CHECK(lines[1].points.size() == 2);
    CHECK(lines[2].points.size() == 2);
}

TEST_CASE("empty signals draw just the price line") {
    const auto lines = parse_polylines(render_overlay_chart({1.0, 2.0, 3.0}, {}));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].color == "black");
}

TEST_CASE("bad marks are rejected") {
    CHECK_THROWS_AS(render_overlay_chart({}, {}), ChartError);
    CHECK_THROWS_AS(render_overlay_chart({1.0, 2.0}, {{5, SignalDirection::Up}}), ChartError);
    CHECK_THROWS_AS(
        render_overlay_chart({1.0, 2.0, 3.0}, {{1, SignalDirection::Up}, {1, SignalDirection::Up}}),
        ChartError);
}

TEST_CASE("canvas is the pinned 1600x600 with linear axes") {
    const auto svg = render_overlay_chart({1.0, 2.0}, {});
    CHECK(svg.find("viewBox=\"0 0 1600.00 600.00\"") != std::string::npos);
}
