#include "edss/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "edss/errors.hpp"
#include "edss/io.hpp"
#include "edss/physics.hpp"

namespace edss {

namespace {

// Gain interval per bandwidth tier: tier 1 (most important) gets the top one.
constexpr std::array<std::pair<double, double>, kTierCount> kOmegaRanges{{{13, 15}, {10, 12}, {7, 9}, {1, 3}}};

constexpr Seconds kTaskHorizon = 43200;
constexpr Seconds kMinDur = 10;
constexpr Seconds kMaxDur = 100;
constexpr double kThetaMaxLo = 3.0;
constexpr double kThetaMaxHi = 10.0;
constexpr int kFreCount = 4;
constexpr int kPolCount = 2;
constexpr int kModeCount = 3;
// Orbit storage as a fraction of the data visible in an average orbit.
constexpr double kStorageFractionLo = 0.6;
constexpr double kStorageFractionHi = 0.8;

struct Draw {
    std::mt19937_64 rng;

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

} // namespace

void GenSpec::validate() const {
    if (n_tasks < 1) throw InputError("n_tasks must be >= 1");
    if (n_sats < 1) throw InputError("n_sats must be >= 1");
    if (windows_per_task.first < 1 || windows_per_task.first > windows_per_task.second)
        throw InputError("windows_per_task range must be non-empty and >= 1");
    if (window_span.first < 2 || window_span.first > window_span.second)
        throw InputError("window_span range must be non-empty and >= 2");
    if (!(semi_major_axis > 6378.0)) throw InputError("semi_major_axis must exceed the Earth radius (6378 km)");
    if (horizon < kMaxDur + 1) throw InputError("horizon too short for task durations");
    if (static_cast<double>(horizon) < orbit_period(semi_major_axis))
        throw InputError("horizon is shorter than one orbit period");
}

double orbit_period(double a) {
    if (!(a > 6378.0)) throw InputError("semi-major axis must exceed 6378 km");
    return 2.0 * std::numbers::pi * std::sqrt(a * a * a / kEarthMu);
}

Instance generate_instance(const GenSpec& spec) {
    spec.validate();
    Draw draw{std::mt19937_64(spec.seed)};

    TierTable tiers;
    for (std::size_t t = 0; t < kTierCount; ++t) tiers.omega[t] = draw.real(kOmegaRanges[t].first, kOmegaRanges[t].second);

    const auto period = static_cast<Seconds>(std::llround(orbit_period(spec.semi_major_axis)));
    const Seconds orbit_count = spec.horizon / period;

    std::vector<Satellite> sats(static_cast<std::size_t>(spec.n_sats));
    for (int s = 0; s < spec.n_sats; ++s) {
        Satellite& sat = sats[static_cast<std::size_t>(s)];
        sat.id = s;
        sat.antenna_diameter = 1.0;
        sat.antenna_efficiency = 0.6;
        sat.beta = 1.0;
        sat.gamma_fre = 30;
        sat.gamma_band = 20;
        sat.gamma_pol = 25;
        sat.gamma_mode = 40;
        sat.delta = 5;
        for (Seconds o = 0; o < orbit_count; ++o)
            sat.orbits.push_back(Orbit{static_cast<int>(o), o * period, (o + 1) * period - 1});
        // Partial last orbit so the orbits cover the whole horizon.
        if (orbit_count * period < spec.horizon - 1)
            sat.orbits.push_back(Orbit{static_cast<int>(orbit_count), orbit_count * period, spec.horizon - 1});
    }

    std::vector<Task> tasks(static_cast<std::size_t>(spec.n_tasks));
    std::vector<TimeWindow> windows;
    for (int j = 0; j < spec.n_tasks; ++j) {
        Task& t = tasks[static_cast<std::size_t>(j)];
        t.id = j;
        t.dur = draw.integer(kMinDur, kMaxDur);
        t.degree = static_cast<int>(draw.integer(1, 100));
        t.est = draw.integer(0, spec.horizon - t.dur);
        t.let = std::min(t.est + kTaskHorizon, spec.horizon);
        t.theta_max = draw.real(kThetaMaxLo, kThetaMaxHi);
        t.fre = static_cast<int>(draw.integer(0, kFreCount - 1));
        t.pol = static_cast<int>(draw.integer(0, kPolCount - 1));
        t.mode = static_cast<int>(draw.integer(0, kModeCount - 1));
        t.profit = physics::task_profit(t.degree, 1.0, tiers.omega);

        const long count = draw.integer(spec.windows_per_task.first, spec.windows_per_task.second);
        std::vector<TimeWindow> own;
        for (long w = 0; w < count; ++w) {
            const int s = static_cast<int>(draw.integer(0, spec.n_sats - 1));
            const auto& orbits = sats[static_cast<std::size_t>(s)].orbits;
            // Orbits overlapping [est, let] with room for a window.
            auto first = std::find_if(orbits.begin(), orbits.end(), [&](const Orbit& o) { return o.end > t.est; });
            auto last = std::find_if(first, orbits.end(), [&](const Orbit& o) { return o.start >= t.let; });
            if (first == last) continue;
            const auto pick = draw.integer(0, static_cast<long>(last - first) - 1);
            const Orbit& orbit = *(first + pick);
            const Seconds lo = std::max(orbit.start, t.est);
            const Seconds hi = std::min(orbit.end, t.let);
            if (hi - lo < 1) continue;
            const Seconds span = std::min<Seconds>(draw.integer(spec.window_span.first, spec.window_span.second), hi - lo);
            const Seconds evt = draw.integer(lo, hi - span);
            TimeWindow tw;
            tw.sat = s;
            tw.task = j;
            tw.orbit = orbit.id;
            tw.evt = evt;
            tw.lvt = evt + span;
            tw.theta_peak = draw.real(0.8 * t.theta_max, 2.0 * t.theta_max);
            own.push_back(tw);
        }
        std::stable_sort(own.begin(), own.end(), [](const TimeWindow& a, const TimeWindow& b) { return a.evt < b.evt; });
        for (std::size_t k = 0; k < own.size(); ++k) {
            own[k].k = static_cast<int>(k);
            windows.push_back(own[k]);
        }
    }

    // Storage: a fraction of the data an average orbit of the satellite is
    // asked to hold. A task visible in w windows contributes 1/w of its
    // data to the orbit of each window.
    std::vector<int> window_count(tasks.size(), 0);
    for (const TimeWindow& w : windows) ++window_count[static_cast<std::size_t>(w.task)];
    for (Satellite& sat : sats) {
        std::vector<double> demand(sat.orbits.size(), 0.0);
        for (const TimeWindow& w : windows) {
            if (w.sat != sat.id) continue;
            const Task& t = tasks[static_cast<std::size_t>(w.task)];
            demand[static_cast<std::size_t>(w.orbit)] +=
                physics::data_volume(t.degree, t.dur, sat.beta, tiers.bandwidth) /
                window_count[static_cast<std::size_t>(w.task)];
        }
        double total = 0.0;
        std::size_t used_orbits = 0;
        for (double d : demand) {
            if (d <= 0.0) continue;
            total += d;
            ++used_orbits;
        }
        const double mean = used_orbits > 0 ? total / static_cast<double>(used_orbits) : 0.0;
        const double fraction = draw.real(kStorageFractionLo, kStorageFractionHi);
        sat.storage_capacity = std::max(std::round(mean * fraction), kMaxDur * tiers.bandwidth[0] * sat.beta);
    }

    return Instance(std::move(tasks), std::move(sats), std::move(windows), tiers, spec.horizon, gen_spec_json(spec));
}

} // namespace edss
