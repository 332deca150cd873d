#include "qkd/core.hpp"

namespace qkd {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

} // namespace

DeviceParams::DeviceParams(double eta_bob_, double e_detector_, double y0_,
                           double e0_, double f_ec_)
    : eta_bob(eta_bob_), e_detector(e_detector_), y0(y0_), e0(e0_), f_ec(f_ec_) {
    require(std::isfinite(eta_bob) && eta_bob > 0.0 && eta_bob <= 1.0,
            "DeviceParams: eta_bob must be in (0, 1]");
    require(std::isfinite(e_detector) && e_detector >= 0.0 && e_detector < 0.5,
            "DeviceParams: e_detector must be in [0, 0.5)");
    require(std::isfinite(y0) && y0 >= 0.0 && y0 < 1.0,
            "DeviceParams: y0 must be in [0, 1)");
    require(is_probability(e0), "DeviceParams: e0 must be in [0, 1]");
    require(std::isfinite(f_ec) && f_ec >= 1.0, "DeviceParams: f_ec must be >= 1");
}

IntensitySet::IntensitySet(double mu_, double nu_) : mu(mu_), nu(nu_) {
    require(std::isfinite(mu) && std::isfinite(nu) && nu > 0.0 && nu < mu,
            "IntensitySet: requires 0 < nu < mu");
}

ChannelPoint::ChannelPoint(double loss_db_) : loss_db(loss_db_) {
    require(std::isfinite(loss_db) && loss_db >= 0.0,
            "ChannelPoint: loss_db must be >= 0");
}

double ChannelPoint::transmittance() const { return db_to_transmittance(loss_db); }

MeasuredStats::MeasuredStats(double q_mu_, double e_mu_, double q_nu_,
                             double e_nu_, double y0_)
    : q_mu(q_mu_), e_mu(e_mu_), q_nu(q_nu_), e_nu(e_nu_), y0(y0_) {
    require(is_probability(q_mu), "MeasuredStats: q_mu must be in [0, 1]");
    require(is_probability(e_mu), "MeasuredStats: e_mu must be in [0, 1]");
    require(is_probability(q_nu), "MeasuredStats: q_nu must be in [0, 1]");
    require(is_probability(e_nu), "MeasuredStats: e_nu must be in [0, 1]");
    require(is_probability(y0), "MeasuredStats: y0 must be in [0, 1]");
    require(q_mu >= y0, "MeasuredStats: q_mu must be >= y0");
    require(q_nu >= y0, "MeasuredStats: q_nu must be >= y0");
}

double binary_entropy(double e) {
    if (!(e >= 0.0 && e <= 1.0))
        throw std::domain_error("binary_entropy: argument must be in [0, 1]");
    if (e == 0.0 || e == 1.0) return 0.0;
    return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

double tau(double e1) {
    if (!(e1 >= 0.0 && e1 <= 1.0))
        throw std::domain_error("tau: argument must be in [0, 1]");
    if (e1 >= 0.5) return 1.0;
    return std::log2(1.0 + 4.0 * e1 - 4.0 * e1 * e1);
}

double db_to_transmittance(double loss_db) {
    if (!(loss_db >= 0.0))
        throw std::domain_error("db_to_transmittance: loss must be >= 0 dB");
    return std::pow(10.0, -loss_db / 10.0);
}

} // namespace qkd
