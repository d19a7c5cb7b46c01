#pragma once

#include <array>

#include "edss/model.hpp"

namespace edss::physics {

struct GainParams {
    double wavelength = 0.1; // m
    double diameter = 1.0;   // m
    double efficiency = 0.6;
};

/// Bessel function of the first kind, J_n(u), for n >= 0. Accurate to
/// better than 1e-9 absolute on |u| <= 30.
[[nodiscard]] double bessel_j(int n, double u);

/// Half-power beamwidth in degrees: 70 * wavelength / diameter.
[[nodiscard]] double theta_3db(const GainParams& params);

/// Boresight gain G0 = efficiency * pi^2 * D^2 / wavelength^2 (linear).
[[nodiscard]] double boresight_gain(const GainParams& params);

/// Linear antenna gain at off-boresight angle `theta` (degrees):
/// G0 * [J1(u)/(2u) + 36 J3(u)/u^3]^2 with u = 2.07123 sin(theta) / sin(theta_3db).
/// Returns G0 exactly at theta == 0.
[[nodiscard]] double antenna_gain(double theta, const GainParams& params);

/// Bandwidth tier for an importance degree in [1, 100]. Throws InputError
/// outside that range.
[[nodiscard]] int bandwidth_for_degree(int degree);

/// Data generated by a task: beta * bandwidth(tier) * dur.
[[nodiscard]] double data_volume(int degree, Seconds dur, double beta,
                                 const std::array<double, kTierCount>& bandwidth = TierTable{}.bandwidth);

/// Setup time between two consecutive tasks on one satellite:
/// max over the per-parameter change costs, the on/off time delta, and 0.
[[nodiscard]] Seconds transition_time(const ParamSet& a, const ParamSet& b, const Satellite& sat);

/// round(base_gain * omega[tier(degree)]), clamped at 0.
[[nodiscard]] Profit task_profit(int degree, double base_gain,
                                 const std::array<double, kTierCount>& omega);

} // namespace edss::physics
