#include "edss/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edss/errors.hpp"

namespace edss::physics {

namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kBeamConstant = 2.07123;

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Ascending power series; terms peak near k = u/2, so cancellation stays
// below ~1e-13 for |u| <= 8.
double bessel_series(int n, double u) {
    const double half = 0.5 * u;
    const double q = -half * half;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// Miller's backward recurrence normalised with J0 + 2 sum J_2k = 1. x > 0.
double bessel_miller(int n, double x) {
    const double top = std::max(static_cast<double>(n), x);
    const int m = 2 * ((static_cast<int>(top) + 30 + static_cast<int>(std::sqrt(160.0 * top))) / 2);
    const double two_over_x = 2.0 / x;
    double next = 0.0; // J_{j+1} (unnormalised)
    double cur = 1.0;  // J_j
    double result = 0.0;
    double even_sum = 0.0;
    for (int j = m; j > 0; --j) {
        const double prev = j * two_over_x * cur - next; // J_{j-1}
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            result *= 1e-250;
            even_sum *= 1e-250;
        }
        if ((j - 1) % 2 == 0) even_sum += cur;
        if (j == n) result = next;
    }
    if (n == 0) result = cur;
    const double norm = 2.0 * even_sum - cur;
    return result / norm;
}

} // namespace

double bessel_j(int n, double u) {
    if (n < 0) throw InputError("bessel_j: negative order");
    if (u == 0.0) return n == 0 ? 1.0 : 0.0;
    const double x = std::abs(u);
    const double value = x <= kSeriesLimit ? bessel_series(n, x) : bessel_miller(n, x);
    return (u < 0.0 && n % 2 == 1) ? -value : value;
}

double theta_3db(const GainParams& params) { return 70.0 * params.wavelength / params.diameter; }

double boresight_gain(const GainParams& params) {
    const double ratio = params.diameter / params.wavelength;
    return params.efficiency * std::numbers::pi * std::numbers::pi * ratio * ratio;
}

double antenna_gain(double theta, const GainParams& params) {
    const double g0 = boresight_gain(params);
    if (theta == 0.0) return g0;
    const double u = kBeamConstant * std::sin(deg2rad(theta)) / std::sin(deg2rad(theta_3db(params)));
    const double pattern = bessel_j(1, u) / (2.0 * u) + 36.0 * bessel_j(3, u) / (u * u * u);
    return g0 * pattern * pattern;
}

int bandwidth_for_degree(int degree) {
    if (degree < 1 || degree > 100) throw InputError("degree " + std::to_string(degree) + " outside [1,100]");
    if (degree > 75) return 1;
    if (degree > 50) return 2;
    if (degree > 25) return 3;
    return 4;
}

double data_volume(int degree, Seconds dur, double beta, const std::array<double, kTierCount>& bandwidth) {
    const int tier = bandwidth_for_degree(degree);
    return beta * bandwidth[static_cast<std::size_t>(tier - 1)] * static_cast<double>(dur);
}

Seconds transition_time(const ParamSet& a, const ParamSet& b, const Satellite& sat) {
    Seconds t = std::max<Seconds>(sat.delta, 0);
    if (a.fre != b.fre) t = std::max(t, sat.gamma_fre);
    if (a.band != b.band) t = std::max(t, sat.gamma_band);
    if (a.pol != b.pol) t = std::max(t, sat.gamma_pol);
    if (a.mode != b.mode) t = std::max(t, sat.gamma_mode);
    return t;
}

Profit task_profit(int degree, double base_gain, const std::array<double, kTierCount>& omega) {
    const int tier = bandwidth_for_degree(degree);
    const double value = base_gain * omega[static_cast<std::size_t>(tier - 1)];
    return std::max<Profit>(0, std::llround(value));
}

} // namespace edss::physics
