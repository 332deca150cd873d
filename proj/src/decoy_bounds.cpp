#include "qkd/decoy_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qkd {

namespace {

double clamp_to(double v, double lo, double hi, bool* clamped) {
    double c = std::clamp(v, lo, hi);
    if (clamped && c != v) *clamped = true;
    return c;
}

} // namespace

double y1_lower(const MeasuredStats& stats, const IntensitySet& intensities,
                bool* clamped) {
    const double mu = intensities.mu;
    const double nu = intensities.nu;
    const double denom = mu * nu - nu * nu;
    if (denom <= 0.0)
        throw std::invalid_argument("y1_lower: requires mu*nu - nu^2 > 0");
    const double raw =
        (mu / denom) * (stats.q_nu * std::exp(nu)
                        - stats.q_mu * std::exp(mu) * nu * nu / (mu * mu)
                        - (mu * mu - nu * nu) / (mu * mu) * stats.y0);
    return clamp_to(raw, 0.0, 1.0, clamped);
}

double y12_lower(const MeasuredStats& stats, const IntensitySet& intensities,
                 double y1_l, bool* clamped) {
    const double mu = intensities.mu;
    const double nu = intensities.nu;
    const double mu3 = mu * mu * mu;
    const double nu3 = nu * nu * nu;
    const double denom = mu3 * (nu - 0.5 * nu3 / mu);
    if (denom <= 0.0)
        throw std::invalid_argument("y12_lower: requires mu^3*(nu - nu^3/(2 mu)) > 0");
    const double raw =
        (mu3 * std::exp(nu) * stats.q_nu
         - nu3 * stats.q_mu * std::exp(mu)
         - (mu3 - nu3) * stats.y0
         + (nu3 * mu - 0.5 * nu3 * mu * mu) * y1_l) / denom;
    return clamp_to(raw, y1_l, 1.0, clamped);
}

double q12_lower(double y12_l, double y1_l, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("q12_lower: mu must be > 0");
    return (0.5 * y12_l * mu * mu + (y1_l * mu - 0.5 * y1_l * mu * mu))
           * std::exp(-mu);
}

double eps12_upper(const MeasuredStats& stats, double q12_l, double mu,
                   double e0, bool* clamped) {
    if (!(q12_l > 0.0))
        throw std::domain_error("eps12_upper: vacuous bound, q12_l <= 0");
    const double raw =
        (stats.e_mu * stats.q_mu - e0 * stats.y0 * std::exp(-mu)) / q12_l;
    return clamp_to(raw, 0.0, 1.0, clamped);
}

double key_rate_lower(const MeasuredStats& stats, double q12_l, double eps12_u,
                      const DeviceParams& params) {
    return -stats.q_mu * params.f_ec * binary_entropy(stats.e_mu)
           + q12_l * (1.0 - tau(eps12_u));
}

BoundsResult analyze(const MeasuredStats& stats, const IntensitySet& intensities,
                     const DeviceParams& params) {
    BoundsResult out;
    out.y1_l = y1_lower(stats, intensities, &out.clamped);
    out.y12_l = y12_lower(stats, intensities, out.y1_l, &out.clamped);
    out.q12_l = q12_lower(out.y12_l, out.y1_l, intensities.mu);
    if (out.q12_l > 0.0) {
        out.eps12_u = eps12_upper(stats, out.q12_l, intensities.mu, params.e0,
                                  &out.clamped);
    } else {
        // Vacuous error bound: the point carries no provable secure signal.
        out.insecure = true;
        out.eps12_u = 1.0;
    }
    out.r_l = key_rate_lower(stats, out.q12_l, out.eps12_u, params);
    return out;
}

} // namespace qkd
