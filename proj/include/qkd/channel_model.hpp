#pragma once

#include <array>

#include "qkd/core.hpp"

namespace qkd {

// Photon-number truncation for exact-rate sums. The Poisson tail beyond
// n = 10 at mu <= 0.5 is below 1e-10.
inline constexpr int kMaxPhotonNumber = 10;

// Expected statistics from the asymptotic forward model, same shape as
// MeasuredStats plus per-photon-number yields and error rates.
struct PredictedStats {
    double q_mu = 0.0;
    double e_mu = 0.0;
    double q_nu = 0.0;
    double e_nu = 0.0;
    double y0 = 0.0;
    std::array<double, kMaxPhotonNumber + 1> yield_n{};
    std::array<double, kMaxPhotonNumber + 1> error_n{};

    MeasuredStats as_measured() const;
};

// Combined source-to-detector transmission: eta_bob times channel
// transmittance.
double overall_transmission(const DeviceParams& params, const ChannelPoint& channel);

// Expected gain of a Poisson source at the given mean photon number:
// Q = Y0 + 1 - exp(-eta * intensity).
double expected_gain(const DeviceParams& params, double eta, double intensity);

// Expected QBER: (e0*Y0 + e_detector*(1 - exp(-eta*intensity))) / Q.
double expected_qber(const DeviceParams& params, double eta, double intensity);

// Full forward prediction for one channel point and intensity pair.
PredictedStats predict_stats(const DeviceParams& params, const ChannelPoint& channel,
                             const IntensitySet& intensities);

// Reference key rate with exact (not bounded) single- and double-photon
// quantities, the infinite-decoy comparison curve.
double infinite_decoy_rate(const DeviceParams& params, const ChannelPoint& channel,
                           double mu);

} // namespace qkd
