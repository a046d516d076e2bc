#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bubblecast/backtest.hpp"
#include "bubblecast/date.hpp"

namespace bubblecast {

/// A labeled historical crash date to score signals against.
struct CrashEvent {
    std::string label;
    Date date;
};

/// Minimal view of a signal entry, shared between library results and
/// signal files read back from disk.
struct SignalMark {
    std::size_t index = 0;
    Date date;
    SignalDirection signal = SignalDirection::Invalid;
};

struct EventOutcome {
    CrashEvent event;
    bool out_of_range = false;
    bool hit = false;
    std::optional<std::size_t> event_index;             // trading-day index matched to the event date
    std::optional<std::size_t> nearest_down_index;      // closest Down either side (ties prefer earlier)
    std::optional<long> lead_time_days;                 // event - signal; negative = signal after the event
    std::optional<std::size_t> first_post_down_index;   // earliest Down after the event (post-crash echo)
};

struct EvaluationReport {
    int tolerance_days = 0;
    std::vector<EventOutcome> events;
    double hit_rate = 0.0;
    double down_signal_fraction = 0.0;
    double up_signal_fraction = 0.0;
    double invalid_signal_fraction = 0.0;
};

/// Distances are in trading days (signal-series index units). An event is a
/// hit when any Down signal lands within +-tolerance_days of the index its
/// date maps to. Post-event Downs are reported separately so a reader can
/// discount crash-echo warnings. Marks are sorted by date internally.
EvaluationReport evaluate_marks(std::vector<SignalMark> marks,
                                const std::vector<CrashEvent>& events, int tolerance_days);

EvaluationReport evaluate_against_events(const SignalSeries& signals,
                                         const std::vector<CrashEvent>& events,
                                         int tolerance_days);

std::vector<SignalMark> to_marks(const SignalSeries& signals);

/// Loads a Label,Date CSV of crash events.
std::vector<CrashEvent> load_events(const std::filesystem::path& path,
                                    DateFormat date_format = DateFormat::Iso8601);

}  // namespace bubblecast
