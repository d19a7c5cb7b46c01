#include <doctest.h>

#include <random>
#include <set>

#include "edss/decoder.hpp"
#include "edss/errors.hpp"
#include "edss/instgen.hpp"
#include "fixtures.hpp"

using namespace edss;
using namespace edss::testing;

namespace {

std::vector<int> shuffled(std::size_t n, std::mt19937_64& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

Instance random_instance(int tasks, std::uint64_t seed) {
    GenSpec spec;
    spec.n_tasks = tasks;
    spec.seed = seed;
    return generate_instance(spec);
}

} // namespace

TEST_CASE("trim_window") {
    const Task loose = make_task(0, 0, 1000, 20, 1, 10.0);
    const TimeWindow w = make_window(0, 0, 0, 0, 0, 100, 5.0);
    CHECK(trim_window(loose, w) == TrimmedWindow{0, 100});

    const Task narrow = make_task(0, 0, 1000, 20, 1, 5.0);
    const TimeWindow steep = make_window(0, 0, 0, 0, 0, 100, 10.0);
    CHECK(trim_window(narrow, steep) == TrimmedWindow{25, 75});

    const Task wide = make_task(0, 0, 1000, 60, 1, 5.0);
    CHECK_FALSE(trim_window(wide, steep).has_value());

    // Task time range clips as well.
    const Task late = make_task(0, 30, 90, 20, 1, 10.0);
    CHECK(trim_window(late, w) == TrimmedWindow{30, 90});
    const Task outside = make_task(0, 200, 1000, 20, 1, 10.0);
    CHECK_FALSE(trim_window(outside, w).has_value());
}

TEST_CASE("trimmed span keeps the detection angle within its limit") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Seconds> start(0, 1000), span(10, 600), dur(1, 100);
    std::uniform_real_distribution<double> angle(0.5, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const Seconds evt = start(rng);
        const TimeWindow w = make_window(0, 0, 0, 0, evt, evt + span(rng), angle(rng));
        const Task t = make_task(0, 0, 5000, dur(rng), 1, angle(rng));
        const auto trimmed = trim_window(t, w);
        if (!trimmed) continue;
        CHECK(trimmed->alvt - trimmed->aevt >= t.dur);
        CHECK(detection_angle(w, static_cast<double>(trimmed->aevt)) <= t.theta_max + 1e-9);
        CHECK(detection_angle(w, static_cast<double>(trimmed->alvt)) <= t.theta_max + 1e-9);
        const Seconds bst = best_start(*trimmed, w, t.dur);
        CHECK(bst >= trimmed->aevt);
        CHECK(bst + t.dur <= trimmed->alvt);
    }
}

TEST_CASE("best_start") {
    const TimeWindow w = make_window(0, 0, 0, 0, 0, 100, 10.0);
    CHECK(best_start(TrimmedWindow{0, 100}, w, 20) == 40);
    CHECK(best_start(TrimmedWindow{0, 100}, w, 100) == 0);
    CHECK(best_start(TrimmedWindow{25, 75}, w, 20) == 40);
    // Centre outside the trimmed span clamps to it.
    CHECK(best_start(TrimmedWindow{70, 100}, w, 20) == 70);
    CHECK(best_start(TrimmedWindow{0, 30}, w, 20) == 10);
}

TEST_CASE("place_task") {
    // Task 0 (fre 1) centres on [19, 39]; task 1 (fre 0) wants [40, 60].
    const std::vector<Task> tasks{make_task(0, 0, 5000, 20, 1, 10.0, 10, 1), make_task(1, 0, 5000, 20, 1)};
    const std::vector<TimeWindow> windows{make_window(0, 0, 0, 0, 0, 58), make_window(0, 1, 0, 0, 0, 100)};
    const Instance inst(tasks, {make_satellite(0, 1, 10000, 100.0)}, windows);
    Timeline timeline(inst);

    SUBCASE("empty timeline gives the best start") {
        const TimeWindow& w = *inst.find_window(1, 0);
        const auto a = place_task(timeline, inst.task(1), w, *trim_window(inst.task(1), w));
        REQUIRE(a.has_value());
        CHECK(a->st == 40);
        CHECK(a->et == 60);
        CHECK(timeline.storage_remaining(0, 0) == doctest::Approx(80.0));
    }
    SUBCASE("predecessor shifts the start by the transition time") {
        const TimeWindow& w0 = *inst.find_window(0, 0);
        const auto first = place_task(timeline, inst.task(0), w0, *trim_window(inst.task(0), w0));
        REQUIRE(first.has_value());
        CHECK(first->et == 39);
        const Seconds needed = transition_oracle(inst.params(0), inst.params(1), inst.satellite(0));
        CHECK(needed == 30);
        const TimeWindow& w1 = *inst.find_window(1, 0);
        const auto second = place_task(timeline, inst.task(1), w1, *trim_window(inst.task(1), w1));
        REQUIRE(second.has_value());
        CHECK(second->st == first->et + needed);
        CHECK(validate_plan(inst, Plan{{*first, *second}, 2}).feasible());
    }
    SUBCASE("storage remainder too small") {
        // 35 units hold one 20-unit task but not two.
        const Instance inst(tasks, {make_satellite(0, 1, 10000, 35.0)}, windows);
        Timeline timeline(inst);
        const TimeWindow& w0 = *inst.find_window(0, 0);
        REQUIRE(place_task(timeline, inst.task(0), w0, *trim_window(inst.task(0), w0)).has_value());
        const TimeWindow& w1 = *inst.find_window(1, 0);
        CHECK_FALSE(place_task(timeline, inst.task(1), w1, *trim_window(inst.task(1), w1)).has_value());
        CHECK(timeline.occupied_count(0, 0) == 1);
    }
}

TEST_CASE("place_task falls back to the latest start before the best one") {
    // Occupant [50, 90] blocks everything after bst in a [0, 100] window.
    const std::vector<Task> tasks{make_task(0, 0, 5000, 40, 1), make_task(1, 0, 5000, 20, 1)};
    const Instance inst(tasks, {make_satellite(0)},
                        {make_window(0, 0, 0, 0, 40, 100), make_window(0, 1, 0, 0, 0, 100)});
    Timeline timeline(inst);
    const TimeWindow& w0 = *inst.find_window(0, 0);
    const auto a = place_task(timeline, inst.task(0), w0, *trim_window(inst.task(0), w0));
    REQUIRE(a.has_value());
    CHECK(a->st == 50);
    const TimeWindow& w1 = *inst.find_window(1, 0);
    const auto b = place_task(timeline, inst.task(1), w1, *trim_window(inst.task(1), w1));
    REQUIRE(b.has_value());
    CHECK(b->st == 50 - 5 - 20);
}

TEST_CASE("decode examples") {
    SUBCASE("single task at its best start") {
        const Instance inst({make_task(0, 0, 5000, 20, 4)}, {make_satellite(0)}, {make_window(0, 0, 0, 0, 0, 100)});
        const std::vector<int> order{0};
        const Plan plan = decode(order, inst);
        REQUIRE(plan.assignments.size() == 1);
        CHECK(plan.assignments[0].st == 40);
        CHECK(plan.profit == 4);
    }
    SUBCASE("two tasks that cannot share one window") {
        // 60 + 60 + 5 > 100
        const std::vector<Task> tasks{make_task(0, 0, 5000, 60, 2), make_task(1, 0, 5000, 60, 2)};
        const Instance inst(tasks, {make_satellite(0)},
                            {make_window(0, 0, 0, 0, 0, 100), make_window(0, 1, 0, 0, 0, 100)});
        const std::vector<int> p1{0, 1}, p2{1, 0};
        const Plan a = decode(p1, inst);
        const Plan b = decode(p2, inst);
        REQUIRE(a.assignments.size() == 1);
        REQUIRE(b.assignments.size() == 1);
        CHECK(a.assignments[0].task == 0);
        CHECK(b.assignments[0].task == 1);
        CHECK(a.profit == b.profit);
    }
    SUBCASE("later window used when the first is taken") {
        const std::vector<Task> tasks{make_task(0, 0, 5000, 60, 2), make_task(1, 0, 5000, 60, 3)};
        const Instance inst(tasks, {make_satellite(0)},
                            {make_window(0, 0, 0, 0, 0, 100), make_window(0, 1, 0, 0, 0, 100),
                             make_window(0, 1, 0, 1, 500, 600)});
        const std::vector<int> order{0, 1};
        const Plan plan = decode(order, inst);
        REQUIRE(plan.assignments.size() == 2);
        CHECK(plan.assignments[1].window == 1);
        CHECK(plan.profit == 5);
    }
    SUBCASE("non-permutations are rejected") {
        const Instance inst({make_task(0, 0, 5000, 20, 4), make_task(1, 0, 5000, 20, 4)}, {make_satellite(0)}, {});
        CHECK_THROWS_AS((void)decode(std::vector<int>{0, 0}, inst), StructuralError);
        CHECK_THROWS_AS((void)decode(std::vector<int>{0}, inst), StructuralError);
        CHECK_THROWS_AS((void)decode(std::vector<int>{0, 2}, inst), StructuralError);
        CHECK(decode(std::vector<int>{1, 0}, inst).assignments.empty());
    }
}

TEST_CASE("decode output is always feasible") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Instance inst = random_instance(150, seed);
        Decoder decoder(inst);
        for (int i = 0; i < 40; ++i) {
            const Plan plan = decoder.decode(shuffled(inst.task_count(), rng));
            const auto report = validate_plan(inst, plan);
            INFO("seed " << seed << " first violation: "
                         << (report.feasible() ? std::string() : report.violations[0].detail));
            CHECK(report.feasible());
            CHECK(plan.profit == plan_profit(inst, plan));
        }
    }
}

TEST_CASE("decode is deterministic and evaluate agrees with it") {
    const Instance inst = random_instance(200, 9);
    std::mt19937_64 rng(2);
    Decoder decoder(inst);
    for (int i = 0; i < 10; ++i) {
        const auto order = shuffled(inst.task_count(), rng);
        const Plan a = decoder.decode(order);
        const Plan b = decoder.decode(order);
        CHECK(a == b);
        CHECK(decode(order, inst) == a);
        CHECK(decoder.evaluate(order) == a.profit);
    }
}

TEST_CASE("decisions for a prefix do not depend on the suffix") {
    const Instance inst = random_instance(120, 4);
    std::mt19937_64 rng(8);
    Decoder decoder(inst);
    for (int i = 0; i < 20; ++i) {
        auto order = shuffled(inst.task_count(), rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, order.size())(rng);
        const Plan full = decoder.decode(order);
        std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), rng);
        const Plan other = decoder.decode(order);
        const std::set<int> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<Assignment> a, b;
        for (const auto& x : full.assignments)
            if (prefix.count(x.task)) a.push_back(x);
        for (const auto& x : other.assignments)
            if (prefix.count(x.task)) b.push_back(x);
        CHECK(a == b);
    }
}

TEST_CASE("free fragments account for occupied time and transition margins") {
    const Instance inst = random_instance(200, 12);
    std::mt19937_64 rng(3);
    Timeline timeline(inst);
    std::vector<Assignment> placed;
    for (int id : shuffled(inst.task_count(), rng)) {
        for (int wi : inst.windows_by_time(id)) {
            const TimeWindow& w = inst.windows()[static_cast<std::size_t>(wi)];
            const auto trimmed = trim_window(inst.task(id), w);
            if (!trimmed) continue;
            if (auto a = timeline.place_task(inst.task(id), w, *trimmed)) {
                placed.push_back(*a);
                break;
            }
        }
    }
    REQUIRE(!placed.empty());

    for (const Satellite& sat : inst.satellites()) {
        for (const Orbit& orbit : sat.orbits) {
            for (const ParamSet probe : {ParamSet{0, 4, 0, 0}, ParamSet{1, 1, 1, 2}}) {
                const auto fragments = timeline.free_fragments(sat.id, orbit.id, orbit.start, orbit.end, probe);
                // Brute force over every second, checking the nearest
                // occupant on each side.
                std::vector<Assignment> here;
                for (const Assignment& a : placed)
                    if (a.sat == sat.id && a.orbit == orbit.id) here.push_back(a);
                std::sort(here.begin(), here.end(), [](const auto& x, const auto& y) { return x.st < y.st; });
                Seconds expected = 0;
                for (Seconds t = orbit.start; t <= orbit.end; ++t) {
                    const Assignment* prev = nullptr;
                    const Assignment* next = nullptr;
                    for (const Assignment& a : here) {
                        if (a.st < t) prev = &a;
                        else if (!next) next = &a;
                    }
                    bool free = true;
                    if (prev && t < prev->et + transition_oracle(inst.params(prev->task), probe, sat)) free = false;
                    if (next && t > next->st - transition_oracle(probe, inst.params(next->task), sat)) free = false;
                    expected += free ? 1 : 0;
                }
                Seconds total = 0;
                for (std::size_t i = 0; i < fragments.size(); ++i) {
                    total += fragments[i].length() + 1;
                    if (i > 0) CHECK(fragments[i].begin > fragments[i - 1].end);
                }
                CHECK(total == expected);
            }
        }
    }
}
