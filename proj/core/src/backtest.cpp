#include "bubblecast/backtest.hpp"

#include <algorithm>
#include <thread>

namespace bubblecast {

namespace {

SignalEntry assess_one(const MarketSeries& series, std::size_t end_index,
                       std::size_t window_length, const ModelConfig& config,
                       std::vector<PricePoint>& scratch) {
    const std::size_t begin = end_index + 1 - window_length;
    scratch.clear();
    for (std::size_t i = begin; i <= end_index; ++i) {
        scratch.push_back(PricePoint{series.rows[i].close, series.rows[i].volume});
    }
    const auto& last = series.rows[end_index];
    return SignalEntry{end_index, last.date, last.close, assess_window(scratch, config)};
}

}  // namespace

SignalSeries scan(const MarketSeries& series, std::size_t window_length,
                  const ModelConfig& config, unsigned threads) {
    SignalSeries out;
    out.window_length = window_length;
    if (window_length < 2 || series.rows.size() < window_length) return out;

    const std::size_t count = series.rows.size() - window_length + 1;
    out.entries.resize(count);

    auto run_range = [&](std::size_t from, std::size_t to) {
        std::vector<PricePoint> scratch;
        scratch.reserve(window_length);
        for (std::size_t w = from; w < to; ++w) {
            out.entries[w] = assess_one(series, w + window_length - 1, window_length, config, scratch);
        }
    };

    if (threads <= 1 || count < 2) {
        run_range(0, count);
        return out;
    }

    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        const std::size_t from = static_cast<std::size_t>(t) * chunk;
        const std::size_t to = std::min(count, from + chunk);
        if (from >= to) break;
        pool.emplace_back(run_range, from, to);
    }
    for (auto& worker : pool) worker.join();
    return out;
}

ScanSummary summarize(const SignalSeries& signals) {
    ScanSummary s;
    s.total = signals.entries.size();
    std::size_t streak = 0;
    std::vector<double> gaps;
    for (const auto& entry : signals.entries) {
        switch (entry.assessment.signal) {
            case SignalDirection::Down: ++s.down; break;
            case SignalDirection::Up: ++s.up; break;
            case SignalDirection::Invalid: ++s.invalid; break;
        }
        if (entry.assessment.signal == SignalDirection::Down) {
            ++streak;
            s.longest_down_streak = std::max(s.longest_down_streak, streak);
        } else {
            streak = 0;
        }
        if (entry.assessment.gap) gaps.push_back(*entry.assessment.gap);
    }
    if (s.total > 0) {
        const auto total = static_cast<double>(s.total);
        s.down_fraction = static_cast<double>(s.down) / total;
        s.up_fraction = static_cast<double>(s.up) / total;
        s.invalid_fraction = static_cast<double>(s.invalid) / total;
    }
    s.gap_count = gaps.size();
    if (!gaps.empty()) {
        std::sort(gaps.begin(), gaps.end());
        s.gap_min = gaps.front();
        s.gap_max = gaps.back();
        const std::size_t mid = gaps.size() / 2;
        s.gap_median =
            gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
    }
    return s;
}

}  // namespace bubblecast
