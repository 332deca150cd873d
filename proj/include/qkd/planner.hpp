#pragma once

#include "qkd/core.hpp"

namespace qkd {

// Which key-rate curve a planning search evaluates.
enum class RateModel {
    WeakVacuum,     // decoy-bound rate from predicted statistics
    InfiniteDecoy,  // exact-yield reference rate
};

struct PlanResult {
    double best_mu = 0.0;
    double best_nu = 0.0;
    double best_rate = 0.0;
    long evaluations = 0;
    bool secure = false;  // false when no grid point gives a positive rate
};

// Maximizes the weak+vacuum decoy-bound rate over mu in [0.01, 1.0] and
// nu in [0.01, mu - 0.01] on a 0.01 grid, then refines locally at 0.001
// resolution. Ties break toward smaller mu, then smaller nu.
PlanResult optimize_intensities(const DeviceParams& params, const ChannelPoint& channel);

// Key rate at one channel point under the selected model. For
// InfiniteDecoy with optimize_mu set, mu is searched on a 0.01 grid per
// point and the given intensities are ignored.
double planned_rate(const DeviceParams& params, const ChannelPoint& channel,
                    const IntensitySet& intensities, RateModel model,
                    bool optimize_mu = false);

// Largest channel loss (to 0.01 dB) with a positive rate, found by a
// 0.5 dB bracketing scan followed by bisection. Throws std::runtime_error
// if the rate is already nonpositive at zero loss.
double max_secure_loss(const DeviceParams& params, const IntensitySet& intensities,
                       RateModel model, bool optimize_mu = false);

} // namespace qkd
