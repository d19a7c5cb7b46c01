#include "edss/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <utility>

#include "edss/errors.hpp"
#include "edss/physics.hpp"

namespace edss {

namespace {

template <typename... Args>
std::string concat(const Args&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

constexpr double kAngleTolerance = 1e-9;

} // namespace

Instance::Instance(std::vector<Task> tasks, std::vector<Satellite> satellites,
                   std::vector<TimeWindow> windows, TierTable tiers, Seconds horizon,
                   std::string provenance)
    : tasks_(std::move(tasks)),
      satellites_(std::move(satellites)),
      windows_(std::move(windows)),
      tiers_(tiers),
      horizon_(horizon),
      provenance_(std::move(provenance)) {
    check_invariants();
    build_indices();
}

void Instance::check_invariants() const {
    if (horizon_ <= 0) throw InputError("horizon must be positive");
    for (std::size_t i = 0; i < kTierCount; ++i) {
        if (!(tiers_.bandwidth[i] > 0.0)) throw InputError(concat("tier ", i + 1, ": bandwidth must be > 0"));
        if (!(tiers_.omega[i] >= 0.0)) throw InputError(concat("tier ", i + 1, ": omega must be >= 0"));
    }

    for (std::size_t i = 0; i < tasks_.size(); ++i) {
        const Task& t = tasks_[i];
        if (t.id != static_cast<int>(i)) throw InputError(concat("task at position ", i, " has id ", t.id));
        if (t.dur <= 0) throw InputError(concat("task ", t.id, ": dur must be > 0"));
        if (t.est + t.dur > t.let) throw InputError(concat("task ", t.id, ": est + dur > let"));
        if (!(t.theta_max > 0.0)) throw InputError(concat("task ", t.id, ": theta_max must be > 0"));
        if (t.degree < 1 || t.degree > 100) throw InputError(concat("task ", t.id, ": degree outside [1,100]"));
        if (t.profit < 0) throw InputError(concat("task ", t.id, ": negative profit"));
    }

    for (std::size_t i = 0; i < satellites_.size(); ++i) {
        const Satellite& s = satellites_[i];
        if (s.id != static_cast<int>(i)) throw InputError(concat("satellite at position ", i, " has id ", s.id));
        if (s.gamma_pol < 0 || s.gamma_mode < 0 || s.gamma_band < 0 || s.gamma_fre < 0 || s.delta < 0)
            throw InputError(concat("satellite ", s.id, ": negative transition time"));
        if (!(s.storage_capacity > 0.0)) throw InputError(concat("satellite ", s.id, ": storage must be > 0"));
        if (!(s.antenna_efficiency > 0.0 && s.antenna_efficiency <= 1.0))
            throw InputError(concat("satellite ", s.id, ": efficiency outside (0,1]"));
        if (!(s.antenna_diameter > 0.0)) throw InputError(concat("satellite ", s.id, ": diameter must be > 0"));
        if (!(s.beta > 0.0)) throw InputError(concat("satellite ", s.id, ": beta must be > 0"));
        for (std::size_t o = 0; o < s.orbits.size(); ++o) {
            const Orbit& orb = s.orbits[o];
            if (orb.id != static_cast<int>(o))
                throw InputError(concat("satellite ", s.id, ": orbit at position ", o, " has id ", orb.id));
            if (orb.start >= orb.end) throw InputError(concat("satellite ", s.id, " orbit ", o, ": start >= end"));
            if (o > 0 && orb.start <= s.orbits[o - 1].end)
                throw InputError(concat("satellite ", s.id, " orbit ", o, ": overlaps or precedes orbit ", o - 1));
        }
    }

    std::map<std::pair<int, int>, int> seen;
    for (const TimeWindow& w : windows_) {
        if (w.task < 0 || static_cast<std::size_t>(w.task) >= tasks_.size())
            throw StructuralError(concat("window references unknown task ", w.task));
        if (w.sat < 0 || static_cast<std::size_t>(w.sat) >= satellites_.size())
            throw StructuralError(concat("window of task ", w.task, " references unknown satellite ", w.sat));
        const Satellite& s = satellites_[static_cast<std::size_t>(w.sat)];
        if (w.orbit < 0 || static_cast<std::size_t>(w.orbit) >= s.orbits.size())
            throw StructuralError(concat("window of task ", w.task, " references unknown orbit ", w.orbit));
        if (!seen.emplace(std::pair{w.task, w.k}, 1).second)
            throw InputError(concat("task ", w.task, " has duplicate window index ", w.k));
        if (w.evt >= w.lvt) throw InputError(concat("window ", w.task, "/", w.k, ": evt >= lvt"));
        const Orbit& orb = s.orbits[static_cast<std::size_t>(w.orbit)];
        if (w.evt < orb.start || w.lvt > orb.end)
            throw InputError(concat("window ", w.task, "/", w.k, ": outside its orbit"));
        if (!(w.theta_peak > 0.0)) throw InputError(concat("window ", w.task, "/", w.k, ": theta_peak must be > 0"));
    }
}

void Instance::build_indices() {
    const std::size_t n = tasks_.size();
    task_begin_.assign(n + 1, 0);
    for (const TimeWindow& w : windows_) ++task_begin_[static_cast<std::size_t>(w.task) + 1];
    std::partial_sum(task_begin_.begin(), task_begin_.end(), task_begin_.begin());

    by_k_.assign(windows_.size(), 0);
    std::vector<std::size_t> fill(task_begin_.begin(), task_begin_.end() - 1);
    for (std::size_t i = 0; i < windows_.size(); ++i)
        by_k_[fill[static_cast<std::size_t>(windows_[i].task)]++] = static_cast<int>(i);

    by_time_ = by_k_;
    for (std::size_t t = 0; t < n; ++t) {
        auto first = by_k_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t]);
        auto last = by_k_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t + 1]);
        std::sort(first, last, [&](int a, int b) { return windows_[a].k < windows_[b].k; });
        auto tfirst = by_time_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t]);
        auto tlast = by_time_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t + 1]);
        std::sort(tfirst, tlast, [&](int a, int b) {
            const auto& wa = windows_[a];
            const auto& wb = windows_[b];
            return std::tie(wa.evt, wa.k) < std::tie(wb.evt, wb.k);
        });
    }

    slot_offset_.assign(satellites_.size() + 1, 0);
    for (std::size_t s = 0; s < satellites_.size(); ++s)
        slot_offset_[s + 1] = slot_offset_[s] + satellites_[s].orbits.size();
}

std::span<const int> Instance::windows_by_time(int task) const {
    const auto t = static_cast<std::size_t>(task);
    return std::span<const int>(by_time_).subspan(task_begin_[t], task_begin_[t + 1] - task_begin_[t]);
}

const TimeWindow* Instance::find_window(int task, int k) const {
    if (task < 0 || static_cast<std::size_t>(task) >= tasks_.size()) return nullptr;
    const auto t = static_cast<std::size_t>(task);
    auto first = by_k_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t]);
    auto last = by_k_.begin() + static_cast<std::ptrdiff_t>(task_begin_[t + 1]);
    auto it = std::lower_bound(first, last, k, [&](int idx, int key) { return windows_[idx].k < key; });
    if (it == last || windows_[*it].k != k) return nullptr;
    return &windows_[*it];
}

ParamSet Instance::params(int task) const {
    const Task& t = this->task(task);
    return ParamSet{t.fre, physics::bandwidth_for_degree(t.degree), t.pol, t.mode};
}

double Instance::data_volume(int task, int sat) const {
    const Task& t = this->task(task);
    return physics::data_volume(t.degree, t.dur, satellite(sat).beta, tiers_.bandwidth);
}

std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::TimeRange: return "time-range";
    case ConstraintKind::Angle: return "angle";
    case ConstraintKind::Visibility: return "visibility";
    case ConstraintKind::Storage: return "storage-per-orbit";
    case ConstraintKind::Transition: return "transition";
    case ConstraintKind::Uniqueness: return "uniqueness";
    }
    return "unknown";
}

std::size_t ValidationReport::count(ConstraintKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

double detection_angle(const TimeWindow& window, double t) {
    const double span = static_cast<double>(window.lvt - window.evt);
    return window.theta_peak * std::abs(2.0 * (t - static_cast<double>(window.evt)) / span - 1.0);
}

ValidationReport validate_plan(const Instance& instance, const Plan& plan) {
    ValidationReport report;
    auto add = [&](ConstraintKind kind, int task, int other, std::string detail) {
        report.violations.push_back(Violation{kind, task, other, std::move(detail)});
    };

    // Structural pass first so the constraint pass can index freely.
    for (const Assignment& a : plan.assignments) {
        const TimeWindow* w = instance.find_window(a.task, a.window);
        if (w == nullptr)
            throw StructuralError(concat("assignment references unknown task/window ", a.task, "/", a.window));
        if (w->sat != a.sat || w->orbit != a.orbit)
            throw StructuralError(concat("assignment of task ", a.task, " names satellite/orbit ", a.sat, "/",
                                         a.orbit, " but window ", a.window, " is on ", w->sat, "/", w->orbit));
    }

    std::vector<int> times_seen(instance.task_count(), 0);
    for (const Assignment& a : plan.assignments) {
        if (++times_seen[static_cast<std::size_t>(a.task)] == 2)
            add(ConstraintKind::Uniqueness, a.task, -1, concat("task ", a.task, " assigned more than once"));
    }

    std::vector<std::vector<const Assignment*>> per_slot(instance.slot_count());
    for (const Assignment& a : plan.assignments) {
        const Task& task = instance.task(a.task);
        const TimeWindow& w = *instance.find_window(a.task, a.window);

        if (a.st < task.est || a.et > task.let || a.et != a.st + task.dur)
            add(ConstraintKind::TimeRange, a.task, -1,
                concat("[", a.st, ",", a.et, "] vs est ", task.est, " let ", task.let, " dur ", task.dur));
        if (a.st < w.evt || a.et > w.lvt)
            add(ConstraintKind::Visibility, a.task, -1,
                concat("[", a.st, ",", a.et, "] outside window [", w.evt, ",", w.lvt, "]"));
        // The V-profile is convex, so the maximum over [st, et] is at an end point.
        const double worst = std::max(detection_angle(w, static_cast<double>(a.st)),
                                      detection_angle(w, static_cast<double>(a.et)));
        if (worst > task.theta_max + kAngleTolerance)
            add(ConstraintKind::Angle, a.task, -1, concat("angle ", worst, " exceeds ", task.theta_max));

        per_slot[instance.slot_index(a.sat, a.orbit)].push_back(&a);
    }

    for (std::size_t s = 0; s < instance.satellites().size(); ++s) {
        const Satellite& sat = instance.satellite(static_cast<int>(s));
        for (std::size_t o = 0; o < sat.orbits.size(); ++o) {
            auto& items = per_slot[instance.slot_index(static_cast<int>(s), static_cast<int>(o))];
            if (items.empty()) continue;

            double used = 0.0;
            bool data_mismatch = false;
            for (const Assignment* a : items) {
                const double expected = instance.data_volume(a->task, a->sat);
                used += expected;
                if (a->data != expected) data_mismatch = true;
            }
            if (used > sat.storage_capacity * (1.0 + 1e-12))
                add(ConstraintKind::Storage, items.front()->task, -1,
                    concat("satellite ", s, " orbit ", o, ": data ", used, " > capacity ", sat.storage_capacity));
            if (data_mismatch)
                add(ConstraintKind::Storage, items.front()->task, -1,
                    concat("satellite ", s, " orbit ", o, ": recorded data differs from task data volume"));

            std::sort(items.begin(), items.end(), [](const Assignment* x, const Assignment* y) {
                return std::tie(x->st, x->et, x->task) < std::tie(y->st, y->et, y->task);
            });
            for (std::size_t i = 1; i < items.size(); ++i) {
                const Assignment& prev = *items[i - 1];
                const Assignment& next = *items[i];
                const Seconds gap = physics::transition_time(instance.params(prev.task), instance.params(next.task), sat);
                if (prev.et + gap > next.st)
                    add(ConstraintKind::Transition, prev.task, next.task,
                        concat("task ", prev.task, " ends ", prev.et, ", needs ", gap, " s before task ", next.task,
                               " at ", next.st));
            }
        }
    }
    return report;
}

Profit plan_profit(const Instance& instance, const Plan& plan) {
    Profit total = 0;
    for (const Assignment& a : plan.assignments) {
        if (a.task < 0 || static_cast<std::size_t>(a.task) >= instance.task_count())
            throw StructuralError(concat("assignment references unknown task ", a.task));
        total += instance.task(a.task).profit;
    }
    return total;
}

} // namespace edss
