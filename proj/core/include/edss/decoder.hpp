#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "edss/model.hpp"

namespace edss {

/// Window bounds after clipping to the task's time range and to the part of
/// the window where the detection angle stays within theta_max.
struct TrimmedWindow {
    Seconds aevt = 0;
    Seconds alvt = 0;

    friend bool operator==(const TrimmedWindow&, const TrimmedWindow&) = default;
};

/// Closed time interval [begin, end].
struct Interval {
    Seconds begin = 0;
    Seconds end = 0;

    [[nodiscard]] Seconds length() const { return end - begin; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// First-stage filter. Returns nothing when the clipped span cannot hold
/// the task's duration.
[[nodiscard]] std::optional<TrimmedWindow> trim_window(const Task& task, const TimeWindow& window);

/// Start time that centres the task on the window (smallest angle), clamped
/// into the trimmed span.
[[nodiscard]] Seconds best_start(const TrimmedWindow& trimmed, const TimeWindow& window, Seconds dur);

/// Occupancy of every satellite-orbit plus remaining storage. Mutable; one
/// Timeline belongs to one decode at a time.
class Timeline {
public:
    explicit Timeline(const Instance& instance);

    /// Clears all occupancy and restores full storage budgets.
    void reset();

    /// Places the task inside `trimmed`: the best start if it fits between
    /// its neighbours, otherwise the earliest feasible start after it, then
    /// the latest feasible start before it. Commits and debits storage on
    /// success.
    std::optional<Assignment> place_task(const Task& task, const TimeWindow& window, const TrimmedWindow& trimmed);

    /// Sub-intervals of [from, to] usable by a task with `params`: the gaps
    /// between committed tasks on (sat, orbit), shrunk by the transition
    /// times each neighbour requires.
    [[nodiscard]] std::vector<Interval> free_fragments(int sat, int orbit, Seconds from, Seconds to,
                                                       const ParamSet& params) const;

    [[nodiscard]] double storage_remaining(int sat, int orbit) const;
    [[nodiscard]] std::size_t occupied_count(int sat, int orbit) const;

private:
    struct Occupied {
        Seconds st;
        Seconds et;
        ParamSet params;
    };
    struct Slot {
        std::vector<Occupied> items; // sorted by st, non-overlapping
        double storage_left = 0.0;
    };

    template <typename Visit>
    void for_each_fragment(const Slot& slot, const Satellite& sat, Seconds from, Seconds to,
                           const ParamSet& params, Visit&& visit) const;

    const Instance* instance_;
    std::vector<Slot> slots_;
};

inline std::optional<Assignment> place_task(Timeline& timeline, const Task& task, const TimeWindow& window,
                                            const TrimmedWindow& trimmed) {
    return timeline.place_task(task, window, trimmed);
}

/// Task time window selection: schedules tasks greedily in `order`. Each
/// task takes the first of its windows (chronological) where it can be
/// placed; tasks without a placement are dropped. Holds scratch buffers so
/// repeated decodes do not allocate.
class Decoder {
public:
    explicit Decoder(const Instance& instance);

    /// Throws StructuralError unless `order` is a permutation of all task ids.
    Plan decode(std::span<const int> order);
    /// Same schedule as decode() but only returns its profit.
    Profit evaluate(std::span<const int> order);

    [[nodiscard]] const Instance& instance() const { return *instance_; }

private:
    template <typename OnPlace>
    void run(std::span<const int> order, OnPlace&& on_place);
    void check_permutation(std::span<const int> order);

    const Instance* instance_;
    Timeline timeline_;
    std::vector<unsigned char> seen_;
};

/// One-shot convenience wrapper around Decoder.
[[nodiscard]] Plan decode(std::span<const int> order, const Instance& instance);

} // namespace edss
