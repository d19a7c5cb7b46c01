#pragma once

// Hand-built instances and independent oracles shared by the test suites.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "edss/decoder.hpp"
#include "edss/model.hpp"
#include "edss/physics.hpp"

namespace edss::testing {

/// Task with profit and timing; degree 10 (tier 4) unless given.
inline Task make_task(int id, Seconds est, Seconds let, Seconds dur, Profit profit, double theta_max = 10.0,
                      int degree = 10, int fre = 0, int pol = 0, int mode = 0) {
    Task t;
    t.id = id;
    t.est = est;
    t.let = let;
    t.dur = dur;
    t.theta_max = theta_max;
    t.degree = degree;
    t.profit = profit;
    t.fre = fre;
    t.pol = pol;
    t.mode = mode;
    return t;
}

/// Satellite with `orbits` consecutive orbits of `orbit_len` seconds.
inline Satellite make_satellite(int id, int orbits = 1, Seconds orbit_len = 10000, double storage = 1e9,
                                Seconds delta = 5) {
    Satellite s;
    s.id = id;
    s.storage_capacity = storage;
    s.beta = 1.0;
    s.gamma_fre = 30;
    s.gamma_band = 20;
    s.gamma_pol = 25;
    s.gamma_mode = 40;
    s.delta = delta;
    for (int o = 0; o < orbits; ++o)
        s.orbits.push_back(Orbit{o, o * orbit_len, (o + 1) * orbit_len - 1});
    return s;
}

inline TimeWindow make_window(int sat, int task, int orbit, int k, Seconds evt, Seconds lvt, double theta_peak = 5.0) {
    return TimeWindow{sat, task, orbit, k, evt, lvt, theta_peak};
}

/// Power series sum_{k<terms} (-1)^k (u/2)^(2k+n) / (k! (k+n)!) in long double.
inline double bessel_series_oracle(int n, double u, int terms = 20) {
    long double sum = 0.0L;
    long double fact_k = 1.0L;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) fact_k *= k;
        long double fact_kn = 1.0L;
        for (int i = 2; i <= k + n; ++i) fact_kn *= i;
        const long double term = std::pow(static_cast<long double>(u) / 2.0L, 2 * k + n) / (fact_k * fact_kn);
        sum += (k % 2 == 0 ? term : -term);
    }
    return static_cast<double>(sum);
}

/// Max decoded profit over every permutation of the tasks.
inline Profit exhaustive_optimum(const Instance& instance) {
    std::vector<int> order(instance.task_count());
    std::iota(order.begin(), order.end(), 0);
    Decoder decoder(instance);
    Profit best = 0;
    do {
        best = std::max(best, decoder.evaluate(order));
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

/// Transition time written out directly from its definition.
inline Seconds transition_oracle(const ParamSet& a, const ParamSet& b, const Satellite& s) {
    const Seconds terms[] = {a.fre != b.fre ? s.gamma_fre : 0, a.band != b.band ? s.gamma_band : 0,
                             a.pol != b.pol ? s.gamma_pol : 0, a.mode != b.mode ? s.gamma_mode : 0, 0, s.delta};
    return *std::max_element(std::begin(terms), std::end(terms));
}

} // namespace edss::testing
