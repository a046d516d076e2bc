// bubblecast: rolling-window bubble-instability signals over OHLCV data.
//
// Subcommands: scan, assess, synth, report, plot.
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "bubblecast/backtest.hpp"
#include "bubblecast/chart.hpp"
#include "bubblecast/csv.hpp"
#include "bubblecast/events.hpp"
#include "bubblecast/format.hpp"
#include "bubblecast/scenario.hpp"
#include "bubblecast/signals_io.hpp"
#include "bubblecast/validate.hpp"

namespace bc = bubblecast;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct CommonOptions {
    std::string input;
    std::string output;
    std::string date_col = "Date";
    std::string price_col = "Close";
    std::string volume_col = "Volume";
    bool mdy_dates = false;
    bool keep_zero_volume = false;
    std::string p0_rule = "min";
    std::size_t window = 50;
    double solver_tol = bc::SearchConfig{}.tolerance;
    double solver_cap_multiple = bc::SearchConfig{}.cap_multiple;
    int price_bins = 0;
    unsigned threads = 0;
};

void add_column_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--date-col", opt.date_col, "Header name of the date column");
    cmd->add_option("--price-col", opt.price_col, "Header name of the price column");
    cmd->add_option("--volume-col", opt.volume_col, "Header name of the volume column");
    cmd->add_flag("--mdy-dates", opt.mdy_dates, "Parse dates as MM/DD/YYYY instead of ISO-8601");
}

void add_model_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--p0-rule", opt.p0_rule, "Base price rule: min or first")
        ->check(CLI::IsMember({"min", "first"}));
    cmd->add_option("--solver-tol", opt.solver_tol, "Root-solver residual tolerance");
    cmd->add_option("--solver-cap-multiple", opt.solver_cap_multiple,
                    "Scan cap as a multiple of the window-end price");
    cmd->add_option("--price-bins", opt.price_bins,
                    "Aggregate (price, volume) into this many equal-width bins before the fit");
}

bc::ColumnMap column_map(const CommonOptions& opt) {
    bc::ColumnMap map;
    map.date = opt.date_col;
    map.price = opt.price_col;
    map.volume = opt.volume_col;
    map.date_format = opt.mdy_dates ? bc::DateFormat::MonthDayYear : bc::DateFormat::Iso8601;
    return map;
}

bc::ModelConfig model_config(const CommonOptions& opt) {
    bc::ModelConfig config;
    config.base_price_rule =
        opt.p0_rule == "first" ? bc::BasePriceRule::FirstClose : bc::BasePriceRule::MinimumClose;
    config.search.tolerance = opt.solver_tol;
    config.search.cap_multiple = opt.solver_cap_multiple;
    config.price_bins = opt.price_bins;
    return config;
}

bc::MarketSeries load_validated(const CommonOptions& opt) {
    if (!std::filesystem::exists(opt.input))
        throw bc::CsvError("input file does not exist: " + opt.input);
    auto raw = bc::load_csv(opt.input, column_map(opt));
    bc::CleaningPolicy policy;
    policy.drop_zero_volume = !opt.keep_zero_volume;
    auto [cleaned, report] = bc::validate_series(raw, policy);
    if (!report.dropped.empty()) {
        std::cerr << "note: dropped " << report.dropped.size() << " of " << report.input_rows
                  << " rows during validation\n";
    }
    return std::move(cleaned);
}

void write_text_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw bc::CsvError("cannot write " + path);
    out << text;
    if (!out) throw bc::CsvError("write failed for " + path);
}

unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

int cmd_scan(const CommonOptions& opt, const std::string& format) {
    const auto series = load_validated(opt);
    if (series.rows.size() < opt.window) {
        std::cerr << "warning: series has " << series.rows.size() << " rows, shorter than window "
                  << opt.window << "; no signals produced\n";
    }
    const auto signals = bc::scan(series, opt.window, model_config(opt), effective_threads(opt.threads));

    if (format == "json") {
        write_text_output(bc::signals_to_json(signals) + "\n", opt.output);
    } else if (format == "svg") {
        std::vector<double> closes;
        closes.reserve(series.rows.size());
        for (const auto& row : series.rows) closes.push_back(row.close);
        std::vector<std::pair<std::size_t, bc::SignalDirection>> marks;
        marks.reserve(signals.entries.size());
        for (const auto& entry : signals.entries)
            marks.emplace_back(entry.window_end_index, entry.assessment.signal);
        write_text_output(bc::render_overlay_chart(closes, marks), opt.output);
    } else {
        std::ostringstream out;
        bc::write_signals_csv(signals, out);
        write_text_output(out.str(), opt.output);
    }

    const auto summary = bc::summarize(signals);
    std::cerr << "scanned " << summary.total << " windows: " << summary.down << " down, "
              << summary.up << " up, " << summary.invalid << " invalid\n";
    if (summary.gap_count > 0) {
        std::cerr << "return gap (market - average) min/median/max: "
                  << bc::format_number(summary.gap_min) << " / "
                  << bc::format_number(summary.gap_median) << " / "
                  << bc::format_number(summary.gap_max) << " over " << summary.gap_count
                  << " windows\n";
    }
    return kExitOk;
}

int cmd_assess(const CommonOptions& opt, const std::string& start_text,
               const std::string& end_text) {
    const auto format = opt.mdy_dates ? bc::DateFormat::MonthDayYear : bc::DateFormat::Iso8601;
    const auto start = bc::parse_date(start_text, format);
    const auto end = bc::parse_date(end_text, format);
    if (!start || !end) {
        std::cerr << "error: unparsable --start/--end date\n";
        return kExitUsageError;
    }

    const auto series = load_validated(opt);
    std::vector<bc::PricePoint> points;
    for (const auto& row : series.rows) {
        if (row.date < *start || *end < row.date) continue;
        points.push_back(bc::PricePoint{row.close, row.volume});
    }
    if (points.size() < 2) {
        std::cerr << "error: date range selects " << points.size()
                  << " rows; at least 2 are required\n";
        return kExitDataError;
    }
    const auto assessment = bc::assess_window(points, model_config(opt));
    std::cout << bc::assessment_to_json(assessment) << "\n";
    return kExitOk;
}

int cmd_synth(const bc::ScenarioSpec& spec, const std::string& output) {
    const auto series = bc::generate_bubble_scenario(spec);
    if (output.empty()) {
        std::ostringstream out;
        out << "Date,Close,Volume\n";
        for (const auto& row : series.rows)
            out << row.date.to_string() << ',' << bc::format_number(row.close) << ','
                << bc::format_number(row.volume) << '\n';
        std::cout << out.str();
    } else {
        bc::write_csv(series, output);
    }
    return kExitOk;
}

int cmd_report(const std::string& signals_path, const std::string& events_path,
               int tolerance_days, bool mdy_dates) {
    const auto records = bc::read_signals_csv(signals_path);
    const auto events = bc::load_events(
        events_path, mdy_dates ? bc::DateFormat::MonthDayYear : bc::DateFormat::Iso8601);
    const auto report = bc::evaluate_marks(bc::to_marks(records), events, tolerance_days);
    std::cout << bc::report_to_json(report) << "\n\n" << bc::report_to_table(report);
    return kExitOk;
}

int cmd_plot(const CommonOptions& opt, const std::string& signals_path) {
    const auto series = load_validated(opt);
    const auto records = bc::read_signals_csv(signals_path);

    std::vector<double> closes;
    closes.reserve(series.rows.size());
    for (const auto& row : series.rows) closes.push_back(row.close);

    std::vector<std::pair<std::size_t, bc::SignalDirection>> marks;
    marks.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.end_index >= closes.size())
            throw bc::CsvError("signals do not align with prices: end_index " +
                               std::to_string(rec.end_index) + " outside the price series");
        const double close = closes[rec.end_index];
        if (std::abs(close - rec.close) > 1e-9 * std::max(std::abs(close), std::abs(rec.close)))
            throw bc::CsvError("signals do not align with prices at index " +
                               std::to_string(rec.end_index));
        marks.emplace_back(rec.end_index, rec.signal);
    }
    write_text_output(bc::render_overlay_chart(closes, marks), opt.output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volume-weighted average-return bubble signals over OHLCV series"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string format = "csv";
    std::string start_text;
    std::string end_text;
    std::string signals_path;
    std::string events_path;
    int tolerance_days = 60;
    bc::ScenarioSpec spec;

    auto* scan = app.add_subcommand("scan", "Assess every rolling window of an OHLCV CSV");
    scan->add_option("--input", opt.input, "OHLCV CSV file")->required();
    scan->add_option("--output", opt.output, "Signals file (stdout when omitted)");
    scan->add_option("--window", opt.window, "Window length in trading days")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    scan->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    scan->add_option("--threads", opt.threads, "Worker threads (0 = hardware default)");
    scan->add_flag("--keep-zero-volume", opt.keep_zero_volume,
                   "Keep zero-volume rows instead of dropping them");
    add_column_flags(scan, opt);
    add_model_flags(scan, opt);

    auto* assess = app.add_subcommand("assess", "Assess a single date range as one window");
    assess->add_option("--input", opt.input, "OHLCV CSV file")->required();
    assess->add_option("--start", start_text, "First date of the window (inclusive)")->required();
    assess->add_option("--end", end_text, "Last date of the window (inclusive)")->required();
    assess->add_flag("--keep-zero-volume", opt.keep_zero_volume,
                     "Keep zero-volume rows instead of dropping them");
    add_column_flags(assess, opt);
    add_model_flags(assess, opt);

    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic bubble scenario CSV");
    synth->add_option("--output", opt.output, "Output CSV (stdout when omitted)");
    synth->add_option("--days", spec.n_days, "Number of trading days");
    synth->add_option("--base-price", spec.base_price, "Pre-bubble price level");
    synth->add_option("--bubble-start", spec.bubble_start, "Index where growth begins");
    synth->add_option("--crash-index", spec.crash_index, "Index of the one-day crash");
    synth->add_option("--growth-rate", spec.growth_rate, "Per-day log growth in the blow-off");
    synth->add_option("--crash-drop", spec.crash_drop_fraction,
                      "Fraction of the bubble gain removed at the crash");
    synth->add_option("--volume-base", spec.volume_base, "Volume at the base price");
    synth->add_option("--volume-slope", spec.volume_price_slope,
                      "Volume change per unit of price above base");
    synth->add_option("--noise", spec.noise_scale, "Relative noise amplitude");
    synth->add_option("--seed", spec.seed, "RNG seed");

    auto* report = app.add_subcommand("report", "Score a signals file against labeled crash events");
    report->add_option("--signals", signals_path, "Signals CSV from the scan command")->required();
    report->add_option("--events", events_path, "Label,Date CSV of crash events")->required();
    report->add_option("--tolerance-days", tolerance_days, "Hit tolerance in trading days")
        ->check(CLI::NonNegativeNumber);
    report->add_flag("--mdy-dates", opt.mdy_dates, "Parse event dates as MM/DD/YYYY");

    auto* plot = app.add_subcommand("plot", "Render a price/signal overlay chart as SVG");
    plot->add_option("--signals", signals_path, "Signals CSV from the scan command")->required();
    plot->add_option("--input", opt.input, "OHLCV CSV the signals were scanned from")->required();
    plot->add_option("--output", opt.output, "Output SVG (stdout when omitted)");
    plot->add_flag("--keep-zero-volume", opt.keep_zero_volume,
                   "Keep zero-volume rows instead of dropping them");
    add_column_flags(plot, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        if (app.got_subcommand(scan)) return cmd_scan(opt, format);
        if (app.got_subcommand(assess)) return cmd_assess(opt, start_text, end_text);
        if (app.got_subcommand(synth)) return cmd_synth(spec, opt.output);
        if (app.got_subcommand(report))
            return cmd_report(signals_path, events_path, tolerance_days, opt.mdy_dates);
        if (app.got_subcommand(plot)) return cmd_plot(opt, signals_path);
    } catch (const bc::InvalidScenarioSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const bc::InvalidSearchConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
