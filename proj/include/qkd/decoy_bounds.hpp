#pragma once

#include "qkd/core.hpp"

namespace qkd {

// Weak+vacuum decoy-state bound pipeline. Lower bounds are clamped to their
// physical range rather than rejected; the clamped flag reports when that
// happened (statistical fluctuation in measured data can push a raw bound
// slightly outside [0, 1]).

// Lower bound on the single-photon yield Y1.
double y1_lower(const MeasuredStats& stats, const IntensitySet& intensities,
                bool* clamped = nullptr);

// Lower bound on the combined single+double photon yield Y1 + Y2,
// given the Y1 lower bound computed from the same statistics.
double y12_lower(const MeasuredStats& stats, const IntensitySet& intensities,
                 double y1_l, bool* clamped = nullptr);

// Lower bound on the effective (single+double photon) gain at signal
// intensity mu.
double q12_lower(double y12_l, double y1_l, double mu);

// Upper bound on the effective error rate. Throws std::domain_error when
// q12_l <= 0 (the bound is vacuous; the point must be treated as insecure).
double eps12_upper(const MeasuredStats& stats, double q12_l, double mu,
                   double e0, bool* clamped = nullptr);

// Lower bound on the secure key rate per pulse. May be negative; a negative
// value means no secure key at this channel point.
double key_rate_lower(const MeasuredStats& stats, double q12_l, double eps12_u,
                      const DeviceParams& params);

// Full pipeline for one measured row. A vacuous error bound (q12_l == 0)
// yields insecure = true with eps12_u pinned to 1 so r_l stays finite.
BoundsResult analyze(const MeasuredStats& stats, const IntensitySet& intensities,
                     const DeviceParams& params);

} // namespace qkd
