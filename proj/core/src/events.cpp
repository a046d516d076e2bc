#include "bubblecast/events.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "bubblecast/csv.hpp"

namespace bubblecast {

std::vector<SignalMark> to_marks(const SignalSeries& signals) {
    std::vector<SignalMark> marks;
    marks.reserve(signals.entries.size());
    for (const auto& entry : signals.entries) {
        marks.push_back({entry.window_end_index, entry.window_end_date, entry.assessment.signal});
    }
    return marks;
}

EvaluationReport evaluate_marks(std::vector<SignalMark> marks,
                                const std::vector<CrashEvent>& events, int tolerance_days) {
    EvaluationReport report;
    report.tolerance_days = tolerance_days;

    std::sort(marks.begin(), marks.end(), [](const SignalMark& a, const SignalMark& b) {
        return a.date == b.date ? a.index < b.index : a.date < b.date;
    });

    std::size_t down = 0;
    std::size_t up = 0;
    std::size_t invalid = 0;
    std::vector<std::size_t> down_indices;
    for (const auto& mark : marks) {
        switch (mark.signal) {
            case SignalDirection::Down:
                ++down;
                down_indices.push_back(mark.index);
                break;
            case SignalDirection::Up: ++up; break;
            case SignalDirection::Invalid: ++invalid; break;
        }
    }
    std::sort(down_indices.begin(), down_indices.end());
    if (!marks.empty()) {
        const auto total = static_cast<double>(marks.size());
        report.down_signal_fraction = static_cast<double>(down) / total;
        report.up_signal_fraction = static_cast<double>(up) / total;
        report.invalid_signal_fraction = static_cast<double>(invalid) / total;
    }

    std::size_t hits = 0;
    for (const auto& event : events) {
        EventOutcome outcome;
        outcome.event = event;

        if (marks.empty() || event.date < marks.front().date || event.date > marks.back().date) {
            outcome.out_of_range = true;
            report.events.push_back(std::move(outcome));
            continue;
        }

        // First trading day at or after the event date.
        const auto at_or_after = std::lower_bound(
            marks.begin(), marks.end(), event.date,
            [](const SignalMark& mark, const Date& date) { return mark.date < date; });
        const std::size_t event_index = at_or_after->index;
        outcome.event_index = event_index;

        const auto first_after =
            std::upper_bound(down_indices.begin(), down_indices.end(), event_index);
        if (first_after != down_indices.end()) outcome.first_post_down_index = *first_after;

        std::optional<std::size_t> pre;
        if (first_after != down_indices.begin()) pre = *std::prev(first_after);

        auto distance = [&](std::size_t idx) {
            return idx >= event_index ? static_cast<long>(idx - event_index)
                                      : static_cast<long>(event_index - idx);
        };
        std::optional<std::size_t> nearest;
        if (pre && outcome.first_post_down_index) {
            nearest = distance(*pre) <= distance(*outcome.first_post_down_index)
                          ? *pre
                          : *outcome.first_post_down_index;
        } else if (pre) {
            nearest = pre;
        } else if (outcome.first_post_down_index) {
            nearest = outcome.first_post_down_index;
        }

        if (nearest) {
            outcome.nearest_down_index = nearest;
            outcome.lead_time_days =
                static_cast<long>(event_index) - static_cast<long>(*nearest);
            outcome.hit = distance(*nearest) <= static_cast<long>(tolerance_days);
            if (outcome.hit) ++hits;
        }
        report.events.push_back(std::move(outcome));
    }
    if (!events.empty()) report.hit_rate = static_cast<double>(hits) / static_cast<double>(events.size());
    return report;
}

EvaluationReport evaluate_against_events(const SignalSeries& signals,
                                         const std::vector<CrashEvent>& events,
                                         int tolerance_days) {
    return evaluate_marks(to_marks(signals), events, tolerance_days);
}

std::vector<CrashEvent> load_events(const std::filesystem::path& path, DateFormat date_format) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw EmptyFileError(path.string());
    const auto header = split_csv_line(line);
    std::size_t label_col = 0;
    std::size_t date_col = 1;
    bool found_label = false;
    bool found_date = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "Label") {
            label_col = i;
            found_label = true;
        } else if (header[i] == "Date") {
            date_col = i;
            found_date = true;
        }
    }
    if (!found_label) throw MissingColumnError(path.string(), "Label");
    if (!found_date) throw MissingColumnError(path.string(), "Date");

    std::vector<CrashEvent> events;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::max(label_col, date_col))
            throw UnparsableRowError(line_number, "row", line);
        const auto date = parse_date(fields[date_col], date_format);
        if (!date) throw UnparsableRowError(line_number, "Date", fields[date_col]);
        events.push_back(CrashEvent{fields[label_col], *date});
    }
    return events;
}

}  // namespace bubblecast
