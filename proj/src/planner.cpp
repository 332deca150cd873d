#include "qkd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkd/channel_model.hpp"
#include "qkd/decoy_bounds.hpp"

namespace qkd {

namespace {

double weak_vacuum_rate(const DeviceParams& params, const ChannelPoint& channel,
                        double mu, double nu) {
    const IntensitySet intensities(mu, nu);
    const PredictedStats predicted = predict_stats(params, channel, intensities);
    return analyze(predicted.as_measured(), intensities, params).r_l;
}

double best_infinite_decoy_rate(const DeviceParams& params,
                                const ChannelPoint& channel) {
    double best = -1.0;
    for (int mi = 1; mi <= 100; ++mi)
        best = std::max(best, infinite_decoy_rate(params, channel, mi / 100.0));
    return best;
}

} // namespace

PlanResult optimize_intensities(const DeviceParams& params, const ChannelPoint& channel) {
    PlanResult result;
    result.best_rate = -std::numeric_limits<double>::infinity();

    // Coarse 0.01 grid. Ascending iteration order plus strict improvement
    // gives the smaller-mu, smaller-nu tie-break.
    for (int mi = 2; mi <= 100; ++mi) {
        for (int ni = 1; ni <= mi - 1; ++ni) {
            const double r = weak_vacuum_rate(params, channel, mi / 100.0, ni / 100.0);
            ++result.evaluations;
            if (r > result.best_rate) {
                result.best_rate = r;
                result.best_mu = mi / 100.0;
                result.best_nu = ni / 100.0;
            }
        }
    }
    if (!(result.best_rate > 0.0)) {
        result.secure = false;
        return result;
    }

    // Local refinement at 0.001 around the coarse optimum.
    const long mu_m = std::lround(result.best_mu * 1000.0);
    const long nu_m = std::lround(result.best_nu * 1000.0);
    for (long m = std::max(10L, mu_m - 9); m <= std::min(1000L, mu_m + 9); ++m) {
        for (long n = std::max(10L, nu_m - 9); n <= std::min(m - 1, nu_m + 9); ++n) {
            const double r = weak_vacuum_rate(params, channel, m / 1000.0, n / 1000.0);
            ++result.evaluations;
            if (r > result.best_rate) {
                result.best_rate = r;
                result.best_mu = m / 1000.0;
                result.best_nu = n / 1000.0;
            }
        }
    }
    result.secure = true;
    return result;
}

double planned_rate(const DeviceParams& params, const ChannelPoint& channel,
                    const IntensitySet& intensities, RateModel model,
                    bool optimize_mu) {
    switch (model) {
    case RateModel::WeakVacuum:
        return weak_vacuum_rate(params, channel, intensities.mu, intensities.nu);
    case RateModel::InfiniteDecoy:
        return optimize_mu ? best_infinite_decoy_rate(params, channel)
                           : infinite_decoy_rate(params, channel, intensities.mu);
    }
    throw std::logic_error("planned_rate: unknown model");
}

double max_secure_loss(const DeviceParams& params, const IntensitySet& intensities,
                       RateModel model, bool optimize_mu) {
    auto rate = [&](double loss) {
        return planned_rate(params, ChannelPoint(loss), intensities, model,
                            optimize_mu);
    };
    if (!(rate(0.0) > 0.0))
        throw std::runtime_error("max_secure_loss: insecure at zero loss");

    constexpr double kScanStep = 0.5;
    constexpr double kScanLimit = 200.0;
    double lo = 0.0;
    double hi = kScanStep;
    while (rate(hi) > 0.0) {
        lo = hi;
        hi += kScanStep;
        if (hi > kScanLimit)
            throw std::runtime_error("max_secure_loss: no sign change below 200 dB");
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (rate(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

} // namespace qkd
