#include <doctest.h>

#include <random>

#include "edss/errors.hpp"
#include "edss/model.hpp"
#include "fixtures.hpp"

using namespace edss;
using namespace edss::testing;

namespace {

// Two tasks sharing window space on satellite 0, orbit 0; task 1 differs in
// polarization only.
Instance two_task_instance(double storage = 1e9) {
    std::vector<Task> tasks{make_task(0, 0, 5000, 20, 3), make_task(1, 0, 5000, 20, 5, 10.0, 10, 0, 1, 0)};
    std::vector<Satellite> sats{make_satellite(0, 1, 10000, storage)};
    std::vector<TimeWindow> windows{make_window(0, 0, 0, 0, 100, 200), make_window(0, 1, 0, 0, 100, 200)};
    return Instance(tasks, sats, windows);
}

Assignment assign(const Instance& inst, int task, Seconds st) {
    const Task& t = inst.task(task);
    return Assignment{task, 0, 0, 0, st, st + t.dur, inst.data_volume(task, 0)};
}

} // namespace

TEST_CASE("validate_plan: empty plan is feasible") {
    const Instance inst = two_task_instance();
    CHECK(validate_plan(inst, Plan{}).feasible());
}

TEST_CASE("validate_plan: single task centred in its window is feasible") {
    const Instance inst = two_task_instance();
    Plan plan{{assign(inst, 0, 140)}, 3};
    CHECK(validate_plan(inst, plan).feasible());
}

TEST_CASE("validate_plan: gap shorter than the transition time is one transition violation") {
    const Instance inst = two_task_instance();
    // Task 0 ends at 120; task 1 starts at 130. Only pol differs, so 25 s are needed.
    const Seconds needed = transition_oracle(inst.params(0), inst.params(1), inst.satellite(0));
    REQUIRE(needed == 25);
    Plan plan{{assign(inst, 0, 100), assign(inst, 1, 130)}, 8};
    const auto report = validate_plan(inst, plan);
    CHECK(report.violations.size() == 1);
    CHECK(report.count(ConstraintKind::Transition) == 1);
    CHECK(report.violations[0].task == 0);
    CHECK(report.violations[0].other_task == 1);

    // Exactly the required gap is fine.
    Plan ok{{assign(inst, 0, 100), assign(inst, 1, 120 + needed)}, 8};
    CHECK(validate_plan(inst, ok).feasible());
}

TEST_CASE("validate_plan: each constraint kind is detected") {
    SUBCASE("time range") {
        std::vector<Task> tasks{make_task(0, 150, 5000, 20, 1)};
        const Instance inst(tasks, {make_satellite(0)}, {make_window(0, 0, 0, 0, 100, 200)});
        Plan plan{{Assignment{0, 0, 0, 0, 140, 160, inst.data_volume(0, 0)}}, 1};
        const auto r = validate_plan(inst, plan);
        CHECK(r.count(ConstraintKind::TimeRange) == 1);
        CHECK(r.violations.size() == 1);
    }
    SUBCASE("end time inconsistent with duration") {
        const Instance inst = two_task_instance();
        Plan plan{{Assignment{0, 0, 0, 0, 140, 150, inst.data_volume(0, 0)}}, 3};
        CHECK(validate_plan(inst, plan).count(ConstraintKind::TimeRange) == 1);
    }
    SUBCASE("angle") {
        // theta_peak 10 at the edges, theta_max 5: only [125, 175] is allowed.
        std::vector<Task> tasks{make_task(0, 0, 5000, 20, 1, 5.0)};
        const Instance inst(tasks, {make_satellite(0)}, {make_window(0, 0, 0, 0, 100, 200, 10.0)});
        Plan bad{{Assignment{0, 0, 0, 0, 110, 130, inst.data_volume(0, 0)}}, 1};
        const auto r = validate_plan(inst, bad);
        CHECK(r.count(ConstraintKind::Angle) == 1);
        CHECK(r.violations.size() == 1);
        Plan edge{{Assignment{0, 0, 0, 0, 125, 145, inst.data_volume(0, 0)}}, 1};
        CHECK(validate_plan(inst, edge).feasible());
    }
    SUBCASE("visibility") {
        const Instance inst = two_task_instance();
        Plan plan{{assign(inst, 0, 190)}, 3};
        const auto r = validate_plan(inst, plan);
        CHECK(r.count(ConstraintKind::Visibility) == 1);
    }
    SUBCASE("storage per orbit") {
        // Each tier-4 task of 20 s produces 20 units; capacity 30 fits one.
        const Instance inst = two_task_instance(30.0);
        Plan one{{assign(inst, 0, 100)}, 3};
        CHECK(validate_plan(inst, one).feasible());
        Plan both{{assign(inst, 0, 100), assign(inst, 1, 160)}, 8};
        const auto r = validate_plan(inst, both);
        CHECK(r.count(ConstraintKind::Storage) == 1);
        CHECK(r.violations.size() == 1);
    }
    SUBCASE("recorded data volume must match the task") {
        const Instance inst = two_task_instance();
        Assignment a = assign(inst, 0, 140);
        a.data = 1.0;
        CHECK(validate_plan(inst, Plan{{a}, 3}).count(ConstraintKind::Storage) == 1);
    }
    SUBCASE("uniqueness") {
        const Instance inst = two_task_instance();
        Plan plan{{assign(inst, 0, 100), assign(inst, 0, 170)}, 6};
        const auto r = validate_plan(inst, plan);
        CHECK(r.count(ConstraintKind::Uniqueness) == 1);
    }
}

TEST_CASE("validate_plan: transitions are not checked across orbits") {
    std::vector<Task> tasks{make_task(0, 0, 50000, 20, 1), make_task(1, 0, 50000, 20, 1, 10.0, 10, 3, 1, 2)};
    const Instance inst(tasks, {make_satellite(0, 2, 1000)},
                        {make_window(0, 0, 0, 0, 900, 999), make_window(0, 1, 1, 0, 1000, 1100)});
    Plan plan{{Assignment{0, 0, 0, 0, 979, 999, 20.0}, Assignment{1, 0, 1, 0, 1000, 1020, 20.0}}, 2};
    CHECK(validate_plan(inst, plan).feasible());
}

TEST_CASE("validate_plan: dangling references are structural errors") {
    const Instance inst = two_task_instance();
    CHECK_THROWS_AS((void)validate_plan(inst, Plan{{Assignment{7, 0, 0, 0, 100, 120, 20.0}}, 0}), StructuralError);
    CHECK_THROWS_AS((void)validate_plan(inst, Plan{{Assignment{0, 0, 0, 3, 100, 120, 20.0}}, 0}), StructuralError);
    CHECK_THROWS_AS((void)validate_plan(inst, Plan{{Assignment{0, 1, 0, 0, 100, 120, 20.0}}, 0}), StructuralError);
}

TEST_CASE("validate_plan is pure") {
    const Instance inst = two_task_instance();
    Plan plan{{assign(inst, 0, 100), assign(inst, 1, 130)}, 8};
    const auto a = validate_plan(inst, plan);
    const auto b = validate_plan(inst, plan);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(a.violations[i].kind == b.violations[i].kind);
        CHECK(a.violations[i].detail == b.violations[i].detail);
    }
}

TEST_CASE("plan_profit") {
    std::vector<Task> tasks{make_task(0, 0, 5000, 10, 3), make_task(1, 0, 5000, 10, 5), make_task(2, 0, 5000, 10, 7),
                            make_task(3, 0, 5000, 10, 12)};
    std::vector<TimeWindow> windows;
    for (int t = 0; t < 4; ++t) windows.push_back(make_window(0, t, 0, 0, 1000 * t, 1000 * t + 500));
    const Instance inst(tasks, {make_satellite(0)}, windows);
    auto at = [&](int t) { return Assignment{t, 0, 0, 0, 1000 * t + 100, 1000 * t + 110, 10.0}; };

    CHECK(plan_profit(inst, Plan{}) == 0);
    CHECK(plan_profit(inst, Plan{{at(3)}, 12}) == 12);
    Plan three{{at(0), at(1), at(2)}, 15};
    CHECK(plan_profit(inst, three) == 15);

    // Permutation invariance.
    std::mt19937 rng(3);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(three.assignments.begin(), three.assignments.end(), rng);
        CHECK(plan_profit(inst, three) == 15);
    }
}

TEST_CASE("Instance rejects invalid input at load time") {
    const std::vector<Satellite> sats{make_satellite(0)};
    CHECK_THROWS_AS(Instance({make_task(0, 100, 110, 20, 1)}, sats, {}), InputError); // est + dur > let
    CHECK_THROWS_AS(Instance({make_task(0, 0, 110, 0, 1)}, sats, {}), InputError);    // dur = 0
    CHECK_THROWS_AS(Instance({make_task(0, 0, 110, 10, 1, 0.0)}, sats, {}), InputError);
    CHECK_THROWS_AS(Instance({make_task(0, 0, 110, 10, 1, 5.0, 101)}, sats, {}), InputError);
    CHECK_THROWS_AS(Instance({make_task(0, 0, 110, 10, -1)}, sats, {}), InputError);
    CHECK_THROWS_AS(Instance({make_task(1, 0, 110, 10, 1)}, sats, {}), InputError); // id != position

    Satellite bad = make_satellite(0);
    bad.storage_capacity = 0.0;
    CHECK_THROWS_AS(Instance({}, {bad}, {}), InputError);
    bad = make_satellite(0);
    bad.antenna_efficiency = 1.5;
    CHECK_THROWS_AS(Instance({}, {bad}, {}), InputError);
    bad = make_satellite(0, 2, 100);
    bad.orbits[1].start = 50;
    CHECK_THROWS_AS(Instance({}, {bad}, {}), InputError);

    const std::vector<Task> one{make_task(0, 0, 5000, 10, 1)};
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 0, 0, 0, 200, 100)}), InputError);
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 0, 0, 0, 100, 20000)}), InputError); // outside orbit
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 0, 0, 0, 100, 200, 0.0)}), InputError);
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 3, 0, 0, 100, 200)}), StructuralError);
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 0, 4, 0, 100, 200)}), StructuralError);
    CHECK_THROWS_AS(Instance(one, sats, {make_window(0, 0, 0, 0, 100, 200), make_window(0, 0, 0, 0, 300, 400)}),
                    InputError);
}

TEST_CASE("Instance orders a task's windows chronologically") {
    const std::vector<Task> one{make_task(0, 0, 50000, 10, 1)};
    const Instance inst(one, {make_satellite(0, 3, 1000)},
                        {make_window(0, 0, 2, 0, 2100, 2200), make_window(0, 0, 0, 1, 100, 200),
                         make_window(0, 0, 1, 2, 1100, 1200)});
    const auto ids = inst.windows_by_time(0);
    REQUIRE(ids.size() == 3);
    CHECK(inst.windows()[static_cast<std::size_t>(ids[0])].evt == 100);
    CHECK(inst.windows()[static_cast<std::size_t>(ids[1])].evt == 1100);
    CHECK(inst.windows()[static_cast<std::size_t>(ids[2])].evt == 2100);
    REQUIRE(inst.find_window(0, 2) != nullptr);
    CHECK(inst.find_window(0, 2)->orbit == 1);
    CHECK(inst.find_window(0, 3) == nullptr);
}

TEST_CASE("detection angle follows the V profile") {
    const TimeWindow w = make_window(0, 0, 0, 0, 0, 100, 10.0);
    CHECK(detection_angle(w, 0) == doctest::Approx(10.0));
    CHECK(detection_angle(w, 50) == doctest::Approx(0.0));
    CHECK(detection_angle(w, 25) == doctest::Approx(5.0));
    CHECK(detection_angle(w, 100) == doctest::Approx(10.0));
}
