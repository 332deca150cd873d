#include "qkd/channel_model.hpp"

#include <cmath>

namespace qkd {

MeasuredStats PredictedStats::as_measured() const {
    return MeasuredStats(q_mu, e_mu, q_nu, e_nu, y0);
}

double overall_transmission(const DeviceParams& params, const ChannelPoint& channel) {
    return params.eta_bob * channel.transmittance();
}

double expected_gain(const DeviceParams& params, double eta, double intensity) {
    // -expm1 keeps the vacuum case exactly equal to y0
    return params.y0 - std::expm1(-eta * intensity);
}

double expected_qber(const DeviceParams& params, double eta, double intensity) {
    const double q = expected_gain(params, eta, intensity);
    if (!(q > 0.0)) throw std::domain_error("expected_qber: zero gain");
    return (params.e0 * params.y0
            - params.e_detector * std::expm1(-eta * intensity)) / q;
}

PredictedStats predict_stats(const DeviceParams& params, const ChannelPoint& channel,
                             const IntensitySet& intensities) {
    const double eta = overall_transmission(params, channel);
    PredictedStats out;
    out.q_mu = expected_gain(params, eta, intensities.mu);
    out.e_mu = expected_qber(params, eta, intensities.mu);
    out.q_nu = expected_gain(params, eta, intensities.nu);
    out.e_nu = expected_qber(params, eta, intensities.nu);
    out.y0 = params.y0;
    for (int n = 0; n <= kMaxPhotonNumber; ++n) {
        const double survive = 1.0 - std::pow(1.0 - eta, n);
        out.yield_n[n] = params.y0 + survive;
        out.error_n[n] =
            (params.e0 * params.y0 + params.e_detector * survive) / out.yield_n[n];
    }
    return out;
}

double infinite_decoy_rate(const DeviceParams& params, const ChannelPoint& channel,
                           double mu) {
    if (!(mu > 0.0))
        throw std::invalid_argument("infinite_decoy_rate: mu must be > 0");
    const double eta = overall_transmission(params, channel);
    const double q_mu = expected_gain(params, eta, mu);
    const double e_mu = expected_qber(params, eta, mu);

    auto yield = [&](int n) { return params.y0 + 1.0 - std::pow(1.0 - eta, n); };
    auto err = [&](int n) {
        return (params.e0 * params.y0
                + params.e_detector * (1.0 - std::pow(1.0 - eta, n))) / yield(n);
    };
    const double w1 = yield(1) * mu;
    const double w2 = yield(2) * mu * mu / 2.0;
    const double q12 = (w1 + w2) * std::exp(-mu);
    const double e12 = (err(1) * w1 + err(2) * w2) * std::exp(-mu) / q12;
    return -q_mu * params.f_ec * binary_entropy(e_mu) + q12 * (1.0 - tau(e12));
}

} // namespace qkd
