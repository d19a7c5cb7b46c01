#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edss {

/// Integer seconds from the start of the planning horizon.
using Seconds = std::int64_t;
using Profit = std::int64_t;

inline constexpr Seconds kDefaultHorizon = 86400;
inline constexpr int kTierCount = 4;

/// Payload parameter settings that drive transition times. `band` is the
/// bandwidth tier (1..4) derived from the task's importance degree.
struct ParamSet {
    int fre = 0;
    int band = 1;
    int pol = 0;
    int mode = 0;

    friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

struct Task {
    int id = 0;
    Seconds est = 0;
    Seconds let = 0;
    Seconds dur = 0;
    double theta_max = 0.0; // degrees
    int degree = 1;         // importance, 1..100
    Profit profit = 0;
    int fre = 0;
    int pol = 0;
    int mode = 0;

    friend bool operator==(const Task&, const Task&) = default;
};

struct Orbit {
    int id = 0;
    Seconds start = 0;
    Seconds end = 0;

    friend bool operator==(const Orbit&, const Orbit&) = default;
};

struct Satellite {
    int id = 0;
    double antenna_diameter = 1.0;   // m
    double antenna_efficiency = 0.6; // (0, 1]
    double storage_capacity = 0.0;   // data units per orbit
    double beta = 1.0;               // data units per second per bandwidth unit
    Seconds gamma_pol = 0;
    Seconds gamma_mode = 0;
    Seconds gamma_band = 0;
    Seconds gamma_fre = 0;
    Seconds delta = 0; // payload on/off time
    std::vector<Orbit> orbits;

    friend bool operator==(const Satellite&, const Satellite&) = default;
};

/// Visibility of one task from one satellite during one orbit. The
/// detection angle follows a V-profile: zero at the window center and
/// `theta_peak` at both edges.
struct TimeWindow {
    int sat = 0;
    int task = 0;
    int orbit = 0;
    int k = 0; // index among the task's windows
    Seconds evt = 0;
    Seconds lvt = 0;
    double theta_peak = 0.0; // degrees

    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct Assignment {
    int task = 0;
    int sat = 0;
    int orbit = 0;
    int window = 0; // TimeWindow::k of the task
    Seconds st = 0;
    Seconds et = 0;
    double data = 0.0;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Plan {
    std::vector<Assignment> assignments;
    Profit profit = 0;

    friend bool operator==(const Plan&, const Plan&) = default;
};

/// Per-tier constants, index 0 holds tier 1. Stored with every instance so
/// results can be reproduced from the file alone.
struct TierTable {
    std::array<double, kTierCount> bandwidth{8.0, 4.0, 2.0, 1.0};
    std::array<double, kTierCount> omega{1.0, 1.0, 1.0, 1.0};

    friend bool operator==(const TierTable&, const TierTable&) = default;
};

/// Immutable problem input. Construction checks every load-time invariant
/// and throws InputError (bad values) or StructuralError (dangling ids).
/// Task, satellite and orbit ids must equal their position in the
/// respective vector.
class Instance {
public:
    Instance(std::vector<Task> tasks, std::vector<Satellite> satellites,
             std::vector<TimeWindow> windows, TierTable tiers = {},
             Seconds horizon = kDefaultHorizon, std::string provenance = {});

    [[nodiscard]] std::span<const Task> tasks() const { return tasks_; }
    [[nodiscard]] std::span<const Satellite> satellites() const { return satellites_; }
    [[nodiscard]] std::span<const TimeWindow> windows() const { return windows_; }
    [[nodiscard]] const TierTable& tiers() const { return tiers_; }
    [[nodiscard]] Seconds horizon() const { return horizon_; }
    /// Opaque JSON object echoed from the generator, empty if none.
    [[nodiscard]] const std::string& provenance() const { return provenance_; }

    [[nodiscard]] std::size_t task_count() const { return tasks_.size(); }
    [[nodiscard]] const Task& task(int id) const { return tasks_[static_cast<std::size_t>(id)]; }
    [[nodiscard]] const Satellite& satellite(int id) const {
        return satellites_[static_cast<std::size_t>(id)];
    }

    /// Windows of a task in chronological (evt, then k) order.
    [[nodiscard]] std::span<const int> windows_by_time(int task) const;
    /// Window `k` of `task`, or nullptr when it does not exist.
    [[nodiscard]] const TimeWindow* find_window(int task, int k) const;

    [[nodiscard]] ParamSet params(int task) const;
    /// Data volume of a task, using the satellite's beta.
    [[nodiscard]] double data_volume(int task, int sat) const;
    /// Position of (sat, orbit) in a flat slot array.
    [[nodiscard]] std::size_t slot_index(int sat, int orbit) const {
        return slot_offset_[static_cast<std::size_t>(sat)] + static_cast<std::size_t>(orbit);
    }
    [[nodiscard]] std::size_t slot_count() const { return slot_offset_.back(); }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.tasks_ == b.tasks_ && a.satellites_ == b.satellites_ && a.windows_ == b.windows_ &&
               a.tiers_ == b.tiers_ && a.horizon_ == b.horizon_ && a.provenance_ == b.provenance_;
    }

private:
    void check_invariants() const;
    void build_indices();

    std::vector<Task> tasks_;
    std::vector<Satellite> satellites_;
    std::vector<TimeWindow> windows_;
    TierTable tiers_;
    Seconds horizon_ = kDefaultHorizon;
    std::string provenance_;

    // windows_ indices grouped by task: [task_begin_[t], task_begin_[t+1])
    std::vector<std::size_t> task_begin_;
    std::vector<int> by_time_;
    std::vector<int> by_k_;
    std::vector<std::size_t> slot_offset_;
};

enum class ConstraintKind {
    TimeRange,  // est <= st, et <= let, et = st + dur
    Angle,      // detection angle within theta_max over [st, et]
    Visibility, // [st, et] inside [evt, lvt]
    Storage,    // per satellite-orbit data budget
    Transition, // gap between consecutive tasks on one satellite-orbit
    Uniqueness, // a task executes at most once
};

[[nodiscard]] std::string_view to_string(ConstraintKind kind);

struct Violation {
    ConstraintKind kind;
    int task = -1;
    int other_task = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool feasible() const { return violations.empty(); }
    [[nodiscard]] std::size_t count(ConstraintKind kind) const;
};

/// Checks every scheduling constraint. Violations are reported, one entry
/// per violated constraint instance. Dangling task/window references and
/// satellite/orbit mismatches throw StructuralError.
[[nodiscard]] ValidationReport validate_plan(const Instance& instance, const Plan& plan);

/// Sum of the profits of the assigned tasks.
[[nodiscard]] Profit plan_profit(const Instance& instance, const Plan& plan);

/// Detection angle at time t for the V-profile of `window`.
[[nodiscard]] double detection_angle(const TimeWindow& window, double t);

} // namespace edss
