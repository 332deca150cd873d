#pragma once

#include <cmath>
#include <stdexcept>

namespace qkd {

// Intrinsic parameters of the receiver and detection package.
//   eta_bob     internal transmittance including detector efficiency, (0, 1]
//   e_detector  erroneous-detection probability, [0, 0.5)
//   y0          background yield per pulse, [0, 1)
//   e0          error probability of a background-only click (random, 1/2)
//   f_ec        error-correction inefficiency relative to the Shannon limit, >= 1
struct DeviceParams {
    double eta_bob;
    double e_detector;
    double y0;
    double e0;
    double f_ec;

    DeviceParams(double eta_bob_, double e_detector_, double y0_,
                 double e0_ = 0.5, double f_ec_ = 1.22);
};

// Signal and weak-decoy mean photon numbers. The vacuum state is implicit.
// Requires 0 < nu < mu so the decoy-bound denominators stay positive.
struct IntensitySet {
    double mu;
    double nu;

    IntensitySet(double mu_, double nu_);
};

// One channel attenuation point, in decibels.
struct ChannelPoint {
    double loss_db;

    explicit ChannelPoint(double loss_db_);

    double transmittance() const;
};

// One observed row of gains and error rates at a fixed channel loss.
struct MeasuredStats {
    double q_mu;
    double e_mu;
    double q_nu;
    double e_nu;
    double y0;

    MeasuredStats(double q_mu_, double e_mu_, double q_nu_, double e_nu_,
                  double y0_);
};

// Output of the decoy-bound pipeline for one channel point.
// r_l may be negative; a negative rate means no secure key at this point.
// insecure is set when the effective-gain lower bound collapses to zero and
// the error-rate upper bound is vacuous.
struct BoundsResult {
    double y1_l = 0.0;
    double y12_l = 0.0;
    double q12_l = 0.0;
    double eps12_u = 0.0;
    double r_l = 0.0;
    bool clamped = false;
    bool insecure = false;
};

// Binary Shannon entropy, with H(0) = H(1) = 0 by continuity.
double binary_entropy(double e);

// Privacy-amplification exponent for the combined single+double photon
// contribution: log2(1 + 4e - 4e^2) for e < 1/2, exactly 1 for e >= 1/2.
double tau(double e1);

// Converts an attenuation in dB to a transmittance in (0, 1].
double db_to_transmittance(double loss_db);

} // namespace qkd
