// Acceptance suite: runs every release gate and prints one line per
// criterion. Exits non-zero if any hard criterion fails. The real-data
// checks are soft: they need user-supplied CSVs (--dow, --btc), print a
// report line either way, and never fail the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bubblecast/backtest.hpp"
#include "bubblecast/chart.hpp"
#include "bubblecast/csv.hpp"
#include "bubblecast/events.hpp"
#include "bubblecast/model.hpp"
#include "bubblecast/scenario.hpp"
#include "bubblecast/signals_io.hpp"
#include "bubblecast/validate.hpp"

using namespace bubblecast;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s — %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

VolumeRegression line(double slope, double intercept) {
    VolumeRegression reg;
    reg.slope = slope;
    reg.intercept = intercept;
    return reg;
}

struct PositiveCase {
    VolumeRegression reg;
    WindowBounds bounds;
};

PositiveCase draw_positive_case(std::mt19937_64& rng) {
    PositiveCase c;
    const double p0 = uniform(rng, 0.5, 100.0);
    const double px = p0 * uniform(rng, 1.01, 20.0);
    const double v0 = uniform(rng, 0.1, 1e6);
    const double vx = uniform(rng, 0.05, 1e6);
    c.reg.slope = (vx - v0) / (px - p0);
    c.reg.intercept = v0 - c.reg.slope * p0;
    c.bounds = {p0, px};
    return c;
}

// ---------------------------------------------------------------------
// 1. Closed-form fidelity against the quadrature oracle.

void criterion_closed_form_fidelity() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        const auto c = draw_positive_case(rng);
        const double closed = average_return_closed_form(c.reg, c.bounds);
        const double quad = average_return_quadrature(c.reg, c.bounds, 1000000);
        worst = std::max(worst, std::abs(closed - quad) / closed);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d random positive-line windows, worst |closed-quad|/closed = %.3g "
                  "(limit 1e-8), %.1f s",
                  trials, worst, seconds);
    verdict(worst <= 1e-8, "closed-form fidelity", detail);
}

// ---------------------------------------------------------------------
// 2. Known values from the analytic integrals.

void criterion_known_values() {
    const double e = std::exp(1.0);
    const double constant_volume = average_return_closed_form(line(0.0, 1.0), {1.0, e});
    const double proportional = average_return_closed_form(line(1.0, 0.0), {1.0, 2.0});
    const double err1 = std::abs(constant_volume - e / (e - 1.0));
    const double err2 = std::abs(proportional - 4.0 / 3.0);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "e/(e-1): err %.3g (limit 1e-9); 4/3: err %.3g (limit 1e-12)", err1, err2);
    verdict(err1 <= 1e-9 && err2 <= 1e-12, "known-value checks", detail);
}

// ---------------------------------------------------------------------
// 3. Root solve at the reference falling line; no roots on positive lines.

void criterion_root_solve() {
    const auto reg = line(-1.0, 4.0);
    const auto root = solve_instability_price(reg, {1.0, 3.0});
    bool ok = root.has_value();
    double residual = 0.0;
    if (ok) {
        residual = std::abs(*root / 1.0 - average_return_closed_form(reg, {1.0, *root}));
        ok = std::abs(*root - 6.19) <= 0.01 && residual <= 1e-9;
    }

    std::mt19937_64 rng(3003);
    int spurious = 0;
    for (int i = 0; i < 100; ++i) {
        const double p0 = uniform(rng, 0.5, 50.0);
        const double px = p0 * uniform(rng, 1.05, 5.0);
        const auto positive = line(uniform(rng, 0.0, 100.0), uniform(rng, 10.0, 1e5));
        if (solve_instability_price(positive, {p0, px})) ++spurious;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "p_a = %.6f (6.19±0.01), residual %.3g (limit 1e-9); %d/100 spurious roots "
                  "on positive lines",
                  root.value_or(0.0), residual, spurious);
    verdict(ok && spurious == 0, "root solve", detail);
}

// ---------------------------------------------------------------------
// 4. Bounds, limit, and scale properties.

void criterion_bounds_and_scaling() {
    std::mt19937_64 rng(4004);
    bool bounds_ok = true;
    for (int i = 0; i < 200; ++i) {
        const auto c = draw_positive_case(rng);
        const double avg = average_return_closed_form(c.reg, c.bounds);
        if (!(avg >= 1.0 && avg <= market_return(c.bounds) * (1.0 + 1e-12))) bounds_ok = false;
    }

    bool limit_ok = true;
    for (int i = 0; i < 200; ++i) {
        const double p0 = uniform(rng, 0.5, 1000.0);
        const double v0 = uniform(rng, 1.0, 1e6);
        const double slope = uniform(rng, -0.5, 0.5) * v0 / p0;
        const auto reg = line(slope, v0 - slope * p0);
        const double value = average_return_closed_form(reg, {p0, p0 * (1.0 + 1e-9)});
        if (std::abs(value - 1.0) > 1e-6) limit_ok = false;
    }

    // Windows built from points, refitted after scaling.
    auto make_points = [&](double p0, double px, double zero_at,
                           double volume_scale) -> std::vector<PricePoint> {
        std::vector<PricePoint> pts;
        const int n = 50;
        for (int i = 0; i < n; ++i) {
            const double p = p0 * std::pow(px / p0, static_cast<double>(i) / (n - 1));
            pts.push_back({p, volume_scale * std::max(0.0, zero_at - p)});
        }
        return pts;
    };

    bool price_scale_ok = true;
    bool volume_scale_ok = true;
    int roots_compared = 0;
    double worst_price = 0.0;
    double worst_volume = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double p0 = uniform(rng, 0.5, 50.0);
        const double px = p0 * uniform(rng, 1.5, 4.0);
        const double zero_at = p0 * uniform(rng, 1.2, 3.0);
        const double vscale = uniform(rng, 1.0, 1e4);
        const auto pts = make_points(p0, px, zero_at, vscale);

        const auto base_fit = fit_volume_regression(pts);
        const WindowBounds base_bounds{p0, px};
        const double base_avg = average_return_closed_form(base_fit, base_bounds);
        const auto base_root = solve_instability_price(base_fit, base_bounds);

        const double c = uniform(rng, 0.01, 100.0);
        std::vector<PricePoint> scaled_prices = pts;
        for (auto& pt : scaled_prices) pt.price *= c;
        const auto price_fit = fit_volume_regression(scaled_prices);
        const WindowBounds price_bounds{p0 * c, px * c};
        const double price_avg = average_return_closed_form(price_fit, price_bounds);
        const auto price_root = solve_instability_price(price_fit, price_bounds);
        worst_price = std::max(worst_price, std::abs(price_avg - base_avg) / base_avg);
        if (std::abs(price_avg - base_avg) / base_avg > 1e-9) price_scale_ok = false;
        if (base_root.has_value() != price_root.has_value()) {
            price_scale_ok = false;
        } else if (base_root) {
            ++roots_compared;
            const double rel = std::abs(*price_root / c - *base_root) / *base_root;
            worst_price = std::max(worst_price, rel);
            if (rel > 1e-9) price_scale_ok = false;
        }

        const double k = uniform(rng, 1e-3, 1e3);
        std::vector<PricePoint> scaled_volumes = pts;
        for (auto& pt : scaled_volumes) pt.volume *= k;
        const auto volume_fit = fit_volume_regression(scaled_volumes);
        const double volume_avg = average_return_closed_form(volume_fit, base_bounds);
        const auto volume_root = solve_instability_price(volume_fit, base_bounds);
        worst_volume = std::max(worst_volume, std::abs(volume_avg - base_avg) / base_avg);
        if (std::abs(volume_avg - base_avg) / base_avg > 1e-9) volume_scale_ok = false;
        if (base_root.has_value() != volume_root.has_value()) {
            volume_scale_ok = false;
        } else if (base_root) {
            const double rel = std::abs(*volume_root - *base_root) / *base_root;
            worst_volume = std::max(worst_volume, rel);
            if (rel > 1e-9) volume_scale_ok = false;
        }
    }

    char detail[220];
    std::snprintf(detail, sizeof(detail),
                  "bounds %s, limit %s; price-scale worst rel %.3g, volume-scale worst rel %.3g "
                  "(limit 1e-9, %d root pairs)",
                  bounds_ok ? "ok" : "violated", limit_ok ? "ok" : "violated", worst_price,
                  worst_volume, roots_compared);
    verdict(bounds_ok && limit_ok && price_scale_ok && volume_scale_ok && roots_compared > 50,
            "bound and limit properties", detail);
}

// ---------------------------------------------------------------------
// CLI plumbing for the end-to-end criteria.

fs::path work_dir() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() /
                 ("bubblecast_accept_" + std::to_string(std::random_device{}()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string command = std::string(BUBBLECAST_CLI_PATH) + " " + args + " > " +
                                stdout_file.string() + " 2> " +
                                (work_dir() / "stderr.txt").string();
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// ---------------------------------------------------------------------
// 5. Synthetic end-to-end: band Down signals and a scored hit.

void criterion_synthetic_end_to_end() {
    const auto start = std::chrono::steady_clock::now();

    const auto series = generate_bubble_scenario();
    const auto signals = scan(series, 50);
    int band_downs = 0;
    for (const auto& entry : signals.entries) {
        if (entry.assessment.signal == SignalDirection::Down && entry.window_end_index >= 170 &&
            entry.window_end_index <= 219)
            ++band_downs;
    }

    const auto csv_path = work_dir() / "scenario.csv";
    const auto signals_path = work_dir() / "signals.csv";
    const auto events_path = work_dir() / "events.csv";
    bool cli_ok = run_cli("synth --output " + csv_path.string(), work_dir() / "out.txt") == 0;
    cli_ok = cli_ok && run_cli("scan --input " + csv_path.string() +
                                   " --keep-zero-volume --output " + signals_path.string(),
                               work_dir() / "out.txt") == 0;
    {
        std::ofstream out(events_path);
        out << "Label,Date\nscripted crash," << series.rows[220].date.to_string() << "\n";
    }
    const auto report_out = work_dir() / "report.json";
    cli_ok = cli_ok && run_cli("report --signals " + signals_path.string() + " --events " +
                                   events_path.string() + " --tolerance-days 60",
                               report_out) == 0;

    bool hit = false;
    long lead = 0;
    if (cli_ok) {
        const auto text = read_file(report_out);
        const auto parsed = nlohmann::json::parse(text.substr(0, text.find('\n')));
        hit = parsed["events"][0]["hit"].get<bool>();
        lead = parsed["events"][0]["lead_time_days"].is_number()
                   ? parsed["events"][0]["lead_time_days"].get<long>()
                   : 0;
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "%d Down signals in window-end band [170,219]; report hit=%s lead=%ld days; "
                  "%.2f s (limit 10 s)",
                  band_downs, hit ? "true" : "false", lead, seconds);
    verdict(band_downs >= 1 && cli_ok && hit && lead > 0 && seconds < 10.0,
            "synthetic end-to-end", detail);
}

// ---------------------------------------------------------------------
// 6. Determinism: concurrency and process reruns.

void criterion_determinism() {
    const auto series = generate_bubble_scenario();
    std::ostringstream seq, par;
    write_signals_csv(scan(series, 50, {}, 1), seq);
    write_signals_csv(scan(series, 50, {}, 4), par);
    const bool threads_ok = seq.str() == par.str();

    const auto csv_path = work_dir() / "det_scenario.csv";
    write_csv(series, csv_path);
    const auto out_a = work_dir() / "det_a.csv";
    const auto out_b = work_dir() / "det_b.csv";
    bool rerun_ok =
        run_cli("scan --input " + csv_path.string() + " --keep-zero-volume --threads 4 --output " +
                    out_a.string(),
                work_dir() / "out.txt") == 0 &&
        run_cli("scan --input " + csv_path.string() + " --keep-zero-volume --threads 2 --output " +
                    out_b.string(),
                work_dir() / "out.txt") == 0 &&
        read_file(out_a) == read_file(out_b) && !read_file(out_a).empty();

    char detail[160];
    std::snprintf(detail, sizeof(detail), "sequential==4-thread scan: %s; CLI reruns identical: %s",
                  threads_ok ? "yes" : "no", rerun_ok ? "yes" : "no");
    verdict(threads_ok && rerun_ok, "determinism", detail);
}

// ---------------------------------------------------------------------
// 8. File contracts: CSV round trip and SVG geometry.

struct Polyline {
    std::string color;
    std::vector<std::pair<double, double>> points;
};

std::vector<Polyline> parse_polylines(const std::string& svg) {
    std::vector<Polyline> lines;
    std::size_t pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        Polyline pl;
        const auto stroke = svg.find("stroke=\"", pos) + 8;
        pl.color = svg.substr(stroke, svg.find('"', stroke) - stroke);
        const auto points_at = svg.find("points=\"", pos) + 8;
        const auto points_end = svg.find('"', points_at);
        std::string body = svg.substr(points_at, points_end - points_at);
        std::size_t cursor = 0;
        while (cursor < body.size()) {
            const auto comma = body.find(',', cursor);
            auto space = body.find(' ', comma);
            if (space == std::string::npos) space = body.size();
            pl.points.emplace_back(std::stod(body.substr(cursor, comma - cursor)),
                                   std::stod(body.substr(comma + 1, space - comma - 1)));
            cursor = space + 1;
        }
        lines.push_back(std::move(pl));
        pos = points_end;
    }
    return lines;
}

void criterion_file_contracts() {
    // CSV round trip at canonical precision.
    std::mt19937_64 rng(8008);
    MarketSeries series;
    series.name = "contract";
    Date date{2012, 5, 1};
    for (int i = 0; i < 250; ++i) {
        date = date.plus_days(1 + static_cast<int>(uniform(rng, 0.0, 2.9)));
        const double close = std::round(uniform(rng, 1.0, 4e4) * 100.0) / 100.0;
        const double volume = std::round(uniform(rng, 1.0, 9.9e9));
        series.rows.push_back({date, close, volume});
    }
    const auto rt_path = work_dir() / "roundtrip.csv";
    write_csv(series, rt_path);
    const auto reloaded = load_csv(rt_path);
    bool rt_ok = reloaded.rows.size() == series.rows.size();
    for (std::size_t i = 0; rt_ok && i < series.rows.size(); ++i) {
        rt_ok = reloaded.rows[i].date == series.rows[i].date &&
                reloaded.rows[i].close == series.rows[i].close &&
                reloaded.rows[i].volume == series.rows[i].volume;
    }

    // Toy SVG: three rows, all Up; blue strictly above black.
    const auto toy = render_overlay_chart(
        {10.0, 12.0, 11.0},
        {{0, SignalDirection::Up}, {1, SignalDirection::Up}, {2, SignalDirection::Up}});
    const auto toy_lines = parse_polylines(toy);
    bool toy_ok = toy_lines.size() == 2 && toy_lines[0].color == "black" &&
                  toy_lines[1].color == "blue" && toy_lines[1].points.size() == 3;
    for (std::size_t i = 0; toy_ok && i < 3; ++i) {
        toy_ok = std::abs(toy_lines[1].points[i].first - toy_lines[0].points[i].first) < 0.05 &&
                 toy_lines[1].points[i].second < toy_lines[0].points[i].second;
    }

    // Synthetic SVG: blue sits below black at a pre-crash Down window.
    const auto scenario = generate_bubble_scenario();
    const auto signals = scan(scenario, 50);
    std::vector<double> closes;
    for (const auto& row : scenario.rows) closes.push_back(row.close);
    std::vector<std::pair<std::size_t, SignalDirection>> marks;
    std::optional<std::size_t> down_index;
    for (const auto& entry : signals.entries) {
        marks.emplace_back(entry.window_end_index, entry.assessment.signal);
        if (!down_index && entry.assessment.signal == SignalDirection::Down &&
            entry.window_end_index >= 170 && entry.window_end_index <= 219)
            down_index = entry.window_end_index;
    }
    bool synth_ok = down_index.has_value();
    if (synth_ok) {
        const auto lines = parse_polylines(render_overlay_chart(closes, marks));
        synth_ok = !lines.empty() && lines[0].color == "black";
        if (synth_ok) {
            const auto& black = lines[0].points;
            const double x_down = black[*down_index].first;
            const double y_black = black[*down_index].second;
            bool found_below = false;
            for (std::size_t li = 1; li < lines.size() && !found_below; ++li) {
                if (lines[li].color != "blue") continue;
                for (const auto& [x, y] : lines[li].points) {
                    if (std::abs(x - x_down) < 0.05 && y > y_black) {
                        found_below = true;
                        break;
                    }
                }
            }
            synth_ok = found_below;
        }
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail), "round trip %s; toy overlay %s; synthetic overlay %s",
                  rt_ok ? "exact" : "broken", toy_ok ? "ok" : "broken",
                  synth_ok ? "ok" : "broken");
    verdict(rt_ok && toy_ok && synth_ok, "CSV/SVG contracts", detail);
}

// ---------------------------------------------------------------------
// 7. Soft real-data checks, gated behind user-supplied files.

void soft_down_near_index(const SignalSeries& signals, std::size_t target, int tolerance,
                          const std::string& label) {
    bool found = false;
    long best = 0;
    bool any = false;
    for (const auto& entry : signals.entries) {
        if (entry.assessment.signal != SignalDirection::Down) continue;
        const long distance = static_cast<long>(entry.window_end_index) -
                              static_cast<long>(target);
        if (!any || std::labs(distance) < std::labs(best)) best = distance;
        any = true;
        if (std::labs(distance) <= tolerance) found = true;
    }
    if (found) {
        std::printf("[SOFT-PASS] %s — Down signal within ±%d trading days (nearest offset %ld)\n",
                    label.c_str(), tolerance, best);
    } else if (any) {
        std::printf("[SOFT-MISS] %s — nearest Down signal %ld trading days away (limit ±%d); "
                    "reported for review, not a failure\n",
                    label.c_str(), best, tolerance);
    } else {
        std::printf("[SOFT-MISS] %s — no Down signals at all; reported for review, not a "
                    "failure\n",
                    label.c_str());
    }
}

std::optional<std::size_t> peak_index_in_month(const MarketSeries& series, int year, int month) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const auto& row = series.rows[i];
        if (row.date.year != year || row.date.month != month) continue;
        if (!best || row.close > series.rows[*best].close) best = i;
    }
    return best;
}

void soft_real_data(const std::string& dow_path, const std::string& btc_path) {
    if (dow_path.empty() && btc_path.empty()) {
        std::printf("[SOFT-SKIP] real-data checks — supply --dow and/or --btc CSVs to run them\n");
        return;
    }
    if (!dow_path.empty()) {
        try {
            const auto [series, report] = validate_series(load_csv(dow_path));
            const auto signals = scan(series, 50);
            soft_down_near_index(signals, 2100, 60, "Dow Jones 2008 crash (index 2100)");
            soft_down_near_index(signals, 5300, 60, "Dow Jones 2020 crash (index 5300)");
        } catch (const std::exception& e) {
            std::printf("[SOFT-MISS] Dow Jones checks — %s\n", e.what());
        }
    }
    if (!btc_path.empty()) {
        try {
            const auto [series, report] = validate_series(load_csv(btc_path));
            const auto signals = scan(series, 50);
            const auto peak_2017 = peak_index_in_month(series, 2017, 12);
            const auto peak_2021 = peak_index_in_month(series, 2021, 5);
            if (peak_2017)
                soft_down_near_index(signals, *peak_2017, 60, "Bitcoin Dec 2017 peak");
            else
                std::printf("[SOFT-MISS] Bitcoin Dec 2017 peak — no rows in that month\n");
            if (peak_2021)
                soft_down_near_index(signals, *peak_2021, 60, "Bitcoin May 2021 peak");
            else
                std::printf("[SOFT-MISS] Bitcoin May 2021 peak — no rows in that month\n");
        } catch (const std::exception& e) {
            std::printf("[SOFT-MISS] Bitcoin checks — %s\n", e.what());
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string dow_path;
    std::string btc_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--dow" && i + 1 < argc) dow_path = argv[++i];
        else if (arg == "--btc" && i + 1 < argc) btc_path = argv[++i];
    }

    criterion_closed_form_fidelity();
    criterion_known_values();
    criterion_root_solve();
    criterion_bounds_and_scaling();
    criterion_synthetic_end_to_end();
    criterion_determinism();
    soft_real_data(dow_path, btc_path);
    criterion_file_contracts();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all hard criteria passed\n");
    return 0;
}
