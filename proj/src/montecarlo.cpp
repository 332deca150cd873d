#include "qkd/montecarlo.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace qkd {

namespace {

constexpr std::uint64_t kBlockSize = 1 << 16;

// splitmix64 finalizer; full-period 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        return mix64(z);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Independent stream per (seed, block): hash both inputs so adjacent block
// indices do not land on overlapping splitmix sequences.
SplitMix64 block_rng(std::uint64_t seed, std::uint64_t block) {
    return SplitMix64{mix64(mix64(seed) ^ mix64(block + 0x6A09E667F3BCC909ULL))};
}

int poisson_knuth(SplitMix64& rng, double exp_neg_mean) {
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > exp_neg_mean);
    return k - 1;
}

struct PulseModel {
    double p_signal, p_signal_weak;  // class thresholds on one uniform draw
    double control_prob;
    double exp_neg_mu, exp_neg_nu;
    double y0, e_detector, e0;
    std::array<double, kMaxTaggedPhotons + 1> survive;  // 1 - (1-eta)^n

    explicit PulseModel(const MCConfig& c)
        : p_signal(c.class_probs[0]),
          p_signal_weak(c.class_probs[0] + c.class_probs[1]),
          control_prob(c.control_mode_prob),
          exp_neg_mu(std::exp(-c.intensities.mu)),
          exp_neg_nu(std::exp(-c.intensities.nu)),
          y0(c.params.y0),
          e_detector(c.params.e_detector),
          e0(c.params.e0) {
        const double eta = c.params.eta_bob * c.channel.transmittance();
        for (int n = 0; n <= kMaxTaggedPhotons; ++n)
            survive[n] = 1.0 - std::pow(1.0 - eta, n);
    }
};

void simulate_block(const PulseModel& m, SplitMix64 rng, std::uint64_t pulses,
                    TallySet& out) {
    for (std::uint64_t i = 0; i < pulses; ++i) {
        const double uc = rng.uniform();
        ClassTally* tally;
        int n;
        if (uc < m.p_signal) {
            tally = &out.signal;
            n = poisson_knuth(rng, m.exp_neg_mu);
        } else if (uc < m.p_signal_weak) {
            tally = &out.weak;
            n = poisson_knuth(rng, m.exp_neg_nu);
        } else {
            tally = &out.vacuum;
            n = 0;
        }
        if (n > kMaxTaggedPhotons) n = kMaxTaggedPhotons;

        const bool control = rng.uniform() < m.control_prob;
        const bool photon_click = n > 0 && rng.uniform() < m.survive[n];
        const bool background = rng.uniform() < m.y0;
        const bool click = photon_click || background;
        bool error = false;
        if (click) {
            const double p_err = photon_click ? m.e_detector : m.e0;
            error = rng.uniform() < p_err;
        }

        if (control) {
            ++out.control_sent;
            out.control_clicks += click;
            continue;
        }
        ++tally->sent;
        ++tally->sent_n[n];
        if (click) {
            ++tally->clicks;
            ++tally->clicks_n[n];
            if (error) {
                ++tally->bit_errors;
                ++tally->errors_n[n];
            }
        }
    }
}

} // namespace

void MCConfig::validate() const {
    if (n_pulses < 1) throw std::invalid_argument("MCConfig: n_pulses must be >= 1");
    double sum = 0.0;
    for (double p : class_probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("MCConfig: class_probs entries must be in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("MCConfig: class_probs must sum to 1");
    if (!(control_mode_prob >= 0.0 && control_mode_prob < 1.0))
        throw std::invalid_argument("MCConfig: control_mode_prob must be in [0, 1)");
    if (!(pulse_rate_hz > 0.0))
        throw std::invalid_argument("MCConfig: pulse_rate_hz must be > 0");
}

void ClassTally::merge(const ClassTally& other) {
    sent += other.sent;
    clicks += other.clicks;
    bit_errors += other.bit_errors;
    for (int n = 0; n <= kMaxTaggedPhotons; ++n) {
        sent_n[n] += other.sent_n[n];
        clicks_n[n] += other.clicks_n[n];
        errors_n[n] += other.errors_n[n];
    }
}

void TallySet::merge(const TallySet& other) {
    signal.merge(other.signal);
    weak.merge(other.weak);
    vacuum.merge(other.vacuum);
    control_sent += other.control_sent;
    control_clicks += other.control_clicks;
}

TallySet simulate_run(const MCConfig& config) {
    config.validate();
    const PulseModel model(config);
    const std::uint64_t n_blocks = (config.n_pulses + kBlockSize - 1) / kBlockSize;
    const unsigned workers =
        std::max(1u, std::min<unsigned>(config.workers,
                                        static_cast<unsigned>(n_blocks)));

    auto run_worker = [&](unsigned w, TallySet& local) {
        for (std::uint64_t b = w; b < n_blocks; b += workers) {
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t count =
                std::min<std::uint64_t>(kBlockSize, config.n_pulses - begin);
            simulate_block(model, block_rng(config.seed, b), count, local);
        }
    };

    std::vector<TallySet> partial(workers);
    if (workers == 1) {
        run_worker(0, partial[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(run_worker, w, std::ref(partial[w]));
        for (auto& t : threads) t.join();
    }
    TallySet total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

EstimatedStats estimate_stats(const TallySet& tallies) {
    if (tallies.signal.sent == 0 || tallies.weak.sent == 0 ||
        tallies.vacuum.sent == 0)
        throw std::runtime_error("estimate_stats: a state class has zero sent pulses");
    EstimatedStats out;
    auto ratio = [](std::uint64_t a, std::uint64_t b) {
        return static_cast<double>(a) / static_cast<double>(b);
    };
    out.q_mu = ratio(tallies.signal.clicks, tallies.signal.sent);
    out.q_nu = ratio(tallies.weak.clicks, tallies.weak.sent);
    out.y0 = ratio(tallies.vacuum.clicks, tallies.vacuum.sent);
    if (tallies.signal.clicks > 0)
        out.e_mu = ratio(tallies.signal.bit_errors, tallies.signal.clicks);
    if (tallies.weak.clicks > 0)
        out.e_nu = ratio(tallies.weak.bit_errors, tallies.weak.clicks);
    return out;
}

MeasuredStats EstimatedStats::to_measured() const {
    if (!e_mu || !e_nu)
        throw std::runtime_error("EstimatedStats: QBER undefined (zero clicks)");
    return MeasuredStats(q_mu, *e_mu, q_nu, *e_nu, y0);
}

TaggedRates true_tagged_stats(const TallySet& tallies) {
    const auto& s = tallies.signal;
    if (s.sent_n[1] + s.sent_n[2] == 0)
        throw std::runtime_error("true_tagged_stats: no signal pulses with n in {1,2}");
    TaggedRates out;
    out.sent = s.sent;
    out.clicks = s.clicks_n[1] + s.clicks_n[2];
    out.q12 = static_cast<double>(out.clicks) / static_cast<double>(s.sent);
    const std::uint64_t errs = s.errors_n[1] + s.errors_n[2];
    out.e12 = out.clicks > 0
                  ? static_cast<double>(errs) / static_cast<double>(out.clicks)
                  : 0.0;
    return out;
}

} // namespace qkd
