#include "edss/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edss/errors.hpp"
#include "edss/physics.hpp"

namespace edss {

namespace {

constexpr Seconds kUnbounded = std::numeric_limits<Seconds>::max() / 4;

Seconds floor_div2(Seconds v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

} // namespace

std::optional<TrimmedWindow> trim_window(const Task& task, const TimeWindow& window) {
    Seconds angle_lo = window.evt;
    Seconds angle_hi = window.lvt;
    if (task.theta_max < window.theta_peak) {
        // V-profile: theta <= theta_max on a band of half-width
        // span/2 * theta_max/theta_peak around the centre.
        const double span = static_cast<double>(window.lvt - window.evt);
        const double margin = 0.5 * span * (1.0 - task.theta_max / window.theta_peak);
        angle_lo = static_cast<Seconds>(std::ceil(static_cast<double>(window.evt) + margin));
        angle_hi = static_cast<Seconds>(std::floor(static_cast<double>(window.lvt) - margin));
    }
    const TrimmedWindow trimmed{std::max({task.est, window.evt, angle_lo}),
                                std::min({task.let, window.lvt, angle_hi})};
    if (trimmed.alvt - trimmed.aevt < task.dur) return std::nullopt;
    return trimmed;
}

Seconds best_start(const TrimmedWindow& trimmed, const TimeWindow& window, Seconds dur) {
    const Seconds centred = floor_div2(window.evt + window.lvt - dur);
    return std::clamp(centred, trimmed.aevt, std::max(trimmed.aevt, trimmed.alvt - dur));
}

Timeline::Timeline(const Instance& instance) : instance_(&instance), slots_(instance.slot_count()) { reset(); }

void Timeline::reset() {
    for (const Satellite& sat : instance_->satellites()) {
        for (const Orbit& orbit : sat.orbits) {
            Slot& slot = slots_[instance_->slot_index(sat.id, orbit.id)];
            slot.items.clear();
            slot.storage_left = sat.storage_capacity;
        }
    }
}

template <typename Visit>
void Timeline::for_each_fragment(const Slot& slot, const Satellite& sat, Seconds from, Seconds to,
                                 const ParamSet& params, Visit&& visit) const {
    const auto& items = slot.items;
    // Gap g lies between items[g-1] and items[g]. Gaps before the first item
    // starting at or after `from` close before `from`.
    auto first = std::lower_bound(items.begin(), items.end(), from,
                                  [](const Occupied& o, Seconds t) { return o.st < t; });
    for (auto g = static_cast<std::size_t>(first - items.begin()); g <= items.size(); ++g) {
        Seconds lo = -kUnbounded;
        if (g > 0) {
            const Occupied& prev = items[g - 1];
            lo = prev.et + physics::transition_time(prev.params, params, sat);
        }
        if (lo > to) break;
        Seconds hi = kUnbounded;
        if (g < items.size()) {
            const Occupied& next = items[g];
            hi = next.st - physics::transition_time(params, next.params, sat);
        }
        const Interval fragment{std::max(lo, from), std::min(hi, to)};
        if (fragment.begin <= fragment.end) visit(fragment);
    }
}

std::vector<Interval> Timeline::free_fragments(int sat, int orbit, Seconds from, Seconds to,
                                               const ParamSet& params) const {
    std::vector<Interval> out;
    for_each_fragment(slots_[instance_->slot_index(sat, orbit)], instance_->satellite(sat), from, to, params,
                      [&](const Interval& f) { out.push_back(f); });
    return out;
}

std::optional<Assignment> Timeline::place_task(const Task& task, const TimeWindow& window,
                                               const TrimmedWindow& trimmed) {
    Slot& slot = slots_[instance_->slot_index(window.sat, window.orbit)];
    const double data = instance_->data_volume(task.id, window.sat);
    if (data > slot.storage_left) return std::nullopt;

    const Satellite& sat = instance_->satellite(window.sat);
    const ParamSet params = instance_->params(task.id);
    const Seconds bst = best_start(trimmed, window, task.dur);

    // Feasible start ranges are [fragment.begin, fragment.end - dur].
    std::optional<Seconds> at_best;
    std::optional<Seconds> after;
    std::optional<Seconds> before;
    for_each_fragment(slot, sat, trimmed.aevt, trimmed.alvt, params, [&](const Interval& f) {
        const Seconds lo = f.begin;
        const Seconds hi = f.end - task.dur;
        if (lo > hi) return;
        if (lo <= bst && bst <= hi) {
            at_best = bst;
        } else if (lo > bst) {
            if (!after) after = lo;
        } else {
            before = hi; // ranges arrive in time order; keep the last one
        }
    });

    std::optional<Seconds> start = at_best ? at_best : (after ? after : before);
    if (!start) return std::nullopt;

    const Occupied item{*start, *start + task.dur, params};
    auto pos = std::lower_bound(slot.items.begin(), slot.items.end(), item.st,
                                [](const Occupied& o, Seconds t) { return o.st < t; });
    slot.items.insert(pos, item);
    slot.storage_left -= data;
    return Assignment{task.id, window.sat, window.orbit, window.k, item.st, item.et, data};
}

double Timeline::storage_remaining(int sat, int orbit) const {
    return slots_[instance_->slot_index(sat, orbit)].storage_left;
}

std::size_t Timeline::occupied_count(int sat, int orbit) const {
    return slots_[instance_->slot_index(sat, orbit)].items.size();
}

Decoder::Decoder(const Instance& instance)
    : instance_(&instance), timeline_(instance), seen_(instance.task_count(), 0) {}

void Decoder::check_permutation(std::span<const int> order) {
    const std::size_t n = instance_->task_count();
    if (order.size() != n)
        throw StructuralError("order has " + std::to_string(order.size()) + " entries, expected " + std::to_string(n));
    std::fill(seen_.begin(), seen_.end(), 0);
    for (int id : order) {
        if (id < 0 || static_cast<std::size_t>(id) >= n || seen_[static_cast<std::size_t>(id)] != 0)
            throw StructuralError("order is not a permutation of task ids (bad entry " + std::to_string(id) + ")");
        seen_[static_cast<std::size_t>(id)] = 1;
    }
}

template <typename OnPlace>
void Decoder::run(std::span<const int> order, OnPlace&& on_place) {
    check_permutation(order);
    timeline_.reset();
    const auto windows = instance_->windows();
    for (int id : order) {
        const Task& task = instance_->task(id);
        for (int wi : instance_->windows_by_time(id)) {
            const TimeWindow& w = windows[static_cast<std::size_t>(wi)];
            const auto trimmed = trim_window(task, w);
            if (!trimmed) continue;
            if (auto placed = timeline_.place_task(task, w, *trimmed)) {
                on_place(*placed);
                break;
            }
        }
    }
}

Plan Decoder::decode(std::span<const int> order) {
    Plan plan;
    run(order, [&](const Assignment& a) {
        plan.assignments.push_back(a);
        plan.profit += instance_->task(a.task).profit;
    });
    return plan;
}

Profit Decoder::evaluate(std::span<const int> order) {
    Profit total = 0;
    run(order, [&](const Assignment& a) { total += instance_->task(a.task).profit; });
    return total;
}

Plan decode(std::span<const int> order, const Instance& instance) {
    Decoder decoder(instance);
    return decoder.decode(order);
}

} // namespace edss
