#pragma once

#include <cstdint>
#include <utility>

#include "edss/model.hpp"

namespace edss {

inline constexpr double kEarthMu = 398600.0; // km^3/s^2

/// Parameters of a synthetic instance. Ranges are inclusive.
struct GenSpec {
    int n_tasks = 100;
    int n_sats = 2;
    Seconds horizon = kDefaultHorizon;
    std::uint64_t seed = 1;
    std::pair<int, int> windows_per_task{1, 5};
    std::pair<Seconds, Seconds> window_span{120, 600};
    double semi_major_axis = 7000.0; // km

    void validate() const;
    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// Keplerian period 2 pi sqrt(a^3 / mu) in seconds, a in km (> 6378).
[[nodiscard]] double orbit_period(double semi_major_axis_km);

/// Seeded synthetic instance: orbits partition the horizon, tasks and
/// windows are sampled directly. The spec is echoed into the provenance.
[[nodiscard]] Instance generate_instance(const GenSpec& spec);

} // namespace edss
