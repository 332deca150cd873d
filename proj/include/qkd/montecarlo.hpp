#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "qkd/core.hpp"

namespace qkd {

// Photon-number tag cap; emissions above this land in the last bin.
// P(n > 15) at mu <= 1 is below 1e-13.
inline constexpr int kMaxTaggedPhotons = 15;

// Pulse-level simulation configuration. class_probs are the state-class
// mixing probabilities in the order (signal, weak, vacuum); the default is
// the 1:1:2 weak:vacuum:signal mix. pulse_rate_hz is reporting-only.
// workers selects the degree of parallelism; results are identical for any
// worker count.
struct MCConfig {
    std::uint64_t n_pulses = 140'000'000;
    std::uint64_t seed = 1;
    std::array<double, 3> class_probs{0.5, 0.25, 0.25};
    double control_mode_prob = 0.5;
    DeviceParams params;
    ChannelPoint channel;
    IntensitySet intensities;
    double pulse_rate_hz = 7.25e5;
    unsigned workers = 1;

    void validate() const;
};

// Counters for one state class, with photon-number-tagged ground truth.
struct ClassTally {
    std::uint64_t sent = 0;
    std::uint64_t clicks = 0;
    std::uint64_t bit_errors = 0;
    std::array<std::uint64_t, kMaxTaggedPhotons + 1> sent_n{};
    std::array<std::uint64_t, kMaxTaggedPhotons + 1> clicks_n{};
    std::array<std::uint64_t, kMaxTaggedPhotons + 1> errors_n{};

    void merge(const ClassTally& other);
    bool operator==(const ClassTally&) const = default;
};

// Full run tally. Control-mode pulses are tracked separately and excluded
// from the key statistics.
struct TallySet {
    ClassTally signal;
    ClassTally weak;
    ClassTally vacuum;
    std::uint64_t control_sent = 0;
    std::uint64_t control_clicks = 0;

    void merge(const TallySet& other);
    bool operator==(const TallySet&) const = default;
};

// Per-class ratio estimates. QBERs are absent when the class recorded no
// clicks. No invariants are imposed here; sampling noise may produce e.g.
// y0 slightly above q_mu at extreme loss.
struct EstimatedStats {
    double q_mu = 0.0;
    std::optional<double> e_mu;
    double q_nu = 0.0;
    std::optional<double> e_nu;
    double y0 = 0.0;

    // Validated conversion; throws if a QBER is undefined or an invariant
    // fails.
    MeasuredStats to_measured() const;
};

// Ground-truth effective gain and error rate over signal pulses that
// emitted exactly one or two photons.
struct TaggedRates {
    double q12 = 0.0;
    double e12 = 0.0;
    std::uint64_t sent = 0;
    std::uint64_t clicks = 0;
};

// Runs the simulation. Deterministic for a fixed config (including seed),
// independent of config.workers.
TallySet simulate_run(const MCConfig& config);

// Ratio estimators Q = clicks/sent, E = errors/clicks per class.
// Throws std::runtime_error if a required class has zero sent pulses.
EstimatedStats estimate_stats(const TallySet& tallies);

// Throws std::runtime_error if no signal pulses with n in {1,2} were sent.
TaggedRates true_tagged_stats(const TallySet& tallies);

} // namespace qkd
