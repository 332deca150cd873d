// Acceptance suite: one criterion per invocation argument, or "all".
// Prints one [PASS]/[FAIL] line per criterion and exits nonzero on failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkd/channel_model.hpp"
#include "qkd/core.hpp"
#include "qkd/decoy_bounds.hpp"
#include "qkd/io.hpp"
#include "qkd/montecarlo.hpp"
#include "qkd/planner.hpp"

using namespace qkd;

namespace {

const DeviceParams kSetup(0.072, 0.045, 3.52e-6, 0.5, 1.22);
const IntensitySet kIntensities(0.31, 0.13);

std::string data_dir() { return QKD_DATA_DIR; }
std::string cli_path() { return QKD_CLI_PATH; }

struct PublishedRow {
    double loss_db, q12_l, eps12_u, r_l;
};

// Published derived-bounds table the pipeline is checked against.
const std::vector<PublishedRow> kPublished = {
    {1.24, 9.535e-3, 5.546e-2, 3.108e-3},
    {3.26, 3.518e-3, 5.361e-2, 1.188e-3},
    {5.23, 1.573e-3, 6.421e-2, 3.689e-4},
    {6.50, 8.310e-4, 6.887e-2, 1.560e-4},
    {8.38, 4.060e-4, 6.135e-2, 1.029e-4},
    {9.46, 2.340e-4, 6.910e-2, 4.058e-5},
    {11.01, 9.825e-5, 6.625e-2, 1.411e-5},
};

bool within_rel(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::abs(want);
}

std::vector<std::vector<double>> read_csv_numeric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

// 1. Published-table regression through the CLI `bounds` command.
bool criterion1() {
    const std::string input = data_dir() + "/table1.csv";
    const std::string output = "acceptance_bounds_out.csv";
    const std::string cmd = cli_path() + " bounds --input " + input
                            + " --mu 0.31 --nu 0.13 --f-ec 1.22 --e0 0.5 --out "
                            + output;
    if (std::system(cmd.c_str()) != 0) {
        std::printf("  bounds command failed\n");
        return false;
    }
    const auto rows = read_csv_numeric(output);
    if (rows.size() != kPublished.size()) {
        std::printf("  expected %zu rows, got %zu\n", kPublished.size(), rows.size());
        return false;
    }
    bool all_ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        // columns: loss_db,y1_l,y12_l,q12_l,eps12_u,r_l,clamped,insecure
        const double q12 = rows[i][3], eps = rows[i][4], r = rows[i][5];
        const auto& pub = kPublished[i];
        const bool ok = within_rel(q12, pub.q12_l, 0.005)
                        && within_rel(eps, pub.eps12_u, 0.005)
                        && within_rel(r, pub.r_l, 0.005);
        std::printf("  row %zu (%.2f dB): q12_l %.4e vs %.4e (%+.2f%%), "
                    "eps12_u %.4e vs %.4e (%+.2f%%), r_l %.4e vs %.4e (%+.2f%%) %s\n",
                    i + 1, pub.loss_db, q12, pub.q12_l,
                    100.0 * (q12 / pub.q12_l - 1.0), eps, pub.eps12_u,
                    100.0 * (eps / pub.eps12_u - 1.0), r, pub.r_l,
                    100.0 * (r / pub.r_l - 1.0), ok ? "ok" : "MISMATCH");
        all_ok = all_ok && ok;
    }
    return all_ok;
}

// 2. Scalar-function suite.
bool criterion2() {
    bool ok = true;
    for (int i = 0; i <= 2000; ++i) {
        const double e = i / 2000.0;
        if (std::abs(binary_entropy(e) - binary_entropy(1.0 - e)) > 1e-12) ok = false;
        if (binary_entropy(e) > 1.0 + 1e-12) ok = false;
    }
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double h = binary_entropy(i / 2000.0);
        if (h < prev - 1e-15) ok = false;
        prev = h;
    }
    if (std::abs(binary_entropy(0.5) - 1.0) > 1e-12) ok = false;
    if (std::abs(tau(0.5 - 1e-13) - 1.0) > 1e-12) ok = false;
    if (std::abs(tau(0.5) - 1.0) != 0.0) ok = false;
    if (std::abs(binary_entropy(0.04487) - 0.2641917745) > 1e-5) ok = false;
    // frozen direct evaluation of the tau closed form
    if (std::abs(tau(0.05546) - 0.2744546085) > 1e-5) ok = false;
    return ok;
}

// 3. Sandwich validation over 100 seeded Monte Carlo runs.
bool criterion3() {
    const int n_seeds = 100;
    int passes = 0;
    for (int s = 0; s < n_seeds; ++s) {
        MCConfig c{
            .n_pulses = 10'000'000,
            .seed = 1000 + static_cast<std::uint64_t>(s),
            .params = kSetup,
            .channel = ChannelPoint(3.26),
            .intensities = kIntensities,
        };
        const TallySet t = simulate_run(c);
        const EstimatedStats est = estimate_stats(t);
        const TaggedRates tagged = true_tagged_stats(t);
        const BoundsResult b = analyze(est.to_measured(), kIntensities, kSetup);
        const double sigma_q =
            std::sqrt(tagged.q12 * (1.0 - tagged.q12) / tagged.sent);
        const double sigma_e =
            tagged.clicks > 0
                ? std::sqrt(tagged.e12 * (1.0 - tagged.e12) / tagged.clicks)
                : 0.0;
        const bool lower_ok = b.q12_l <= tagged.q12 + 3.0 * sigma_q;
        const bool upper_ok = b.eps12_u >= tagged.e12 - 3.0 * sigma_e;
        if (lower_ok && upper_ok) ++passes;
    }
    std::printf("  sandwich held in %d/%d runs (need >= 95)\n", passes, n_seeds);
    return passes >= 95;
}

// 4. Estimator consistency against the forward model.
bool criterion4() {
    MCConfig c{
        .n_pulses = 10'000'000,
        .seed = 20260823,
        .params = kSetup,
        .channel = ChannelPoint(3.26),
        .intensities = kIntensities,
    };
    const TallySet t = simulate_run(c);
    const EstimatedStats est = estimate_stats(t);
    const PredictedStats pred = predict_stats(kSetup, c.channel, kIntensities);
    auto sigma = [](double p, double n) { return std::sqrt(p * (1.0 - p) / n); };
    struct Check {
        const char* name;
        double got, want, sig;
    } checks[] = {
        {"Q_mu", est.q_mu, pred.q_mu, sigma(pred.q_mu, (double)t.signal.sent)},
        {"E_mu", est.e_mu.value(), pred.e_mu, sigma(pred.e_mu, (double)t.signal.clicks)},
        {"Q_nu", est.q_nu, pred.q_nu, sigma(pred.q_nu, (double)t.weak.sent)},
        {"Y_0", est.y0, pred.y0, sigma(pred.y0, (double)t.vacuum.sent)},
    };
    bool ok = true;
    for (const auto& ch : checks) {
        const double dev = std::abs(ch.got - ch.want) / ch.sig;
        std::printf("  %s: estimated %.6e expected %.6e (%.2f sigma)\n", ch.name,
                    ch.got, ch.want, dev);
        if (dev >= 3.0) ok = false;
    }
    return ok;
}

// 5. Secure-reach property.
bool criterion5() {
    const PredictedStats p =
        predict_stats(kSetup, ChannelPoint(11.01), kIntensities);
    const double r = analyze(p.as_measured(), kIntensities, kSetup).r_l;
    const double wv = max_secure_loss(kSetup, kIntensities, RateModel::WeakVacuum);
    const double inf =
        max_secure_loss(kSetup, kIntensities, RateModel::InfiniteDecoy, true);
    std::printf("  r_l(11.01 dB) = %.4e; reach weak+vacuum = %.2f dB, "
                "infinite decoy (optimal mu) = %.2f dB\n", r, wv, inf);
    return r > 0.0 && wv < inf;
}

// 6. Dominance and monotonicity.
bool criterion6() {
    bool ok = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double loss = 0.0; loss <= 14.0 + 1e-9; loss += 0.5) {
        const ChannelPoint channel(loss);
        const PredictedStats p = predict_stats(kSetup, channel, kIntensities);
        const double r_l = analyze(p.as_measured(), kIntensities, kSetup).r_l;
        const double r_inf = infinite_decoy_rate(kSetup, channel, kIntensities.mu);
        if (r_inf < r_l - 1e-12) ok = false;
        if (r_l > prev + 1e-15) ok = false;
        prev = r_l;
    }
    return ok;
}

// 7. Determinism of simulate, in-process and through the CLI.
bool criterion7() {
    MCConfig c{
        .n_pulses = 2'000'000,
        .seed = 77,
        .params = kSetup,
        .channel = ChannelPoint(3.26),
        .intensities = kIntensities,
        .workers = 1,
    };
    const TallySet t1 = simulate_run(c);
    c.workers = 4;
    const TallySet t4 = simulate_run(c);
    if (!(t1 == t4)) {
        std::printf("  in-process tallies differ across worker counts\n");
        return false;
    }

    const std::string args =
        " simulate --pulses 2000000 --seed 77 --loss 3.26 --eta-bob 0.072"
        " --e-det 0.045 --y0 3.52e-6 --mu 0.31 --nu 0.13";
    if (std::system((cli_path() + args + " --workers 1 --out acc7_a.json").c_str()) != 0)
        return false;
    if (std::system((cli_path() + args + " --workers 4 --out acc7_b.json").c_str()) != 0)
        return false;
    auto load = [](const std::string& path) {
        std::ifstream in(path);
        nlohmann::json j;
        in >> j;
        j["manifest"].erase("timestamp");
        j["manifest"]["parameters"].erase("workers");
        j["config"].erase("workers");
        return j;
    };
    const bool same = load("acc7_a.json").dump() == load("acc7_b.json").dump();
    if (!same) std::printf("  CLI reports differ across worker counts\n");
    return same;
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {1, "published-table regression via `bounds`", criterion1},
        {2, "scalar-function suite", criterion2},
        {3, "Monte Carlo sandwich validation (100 seeds)", criterion3},
        {4, "estimator consistency with the forward model", criterion4},
        {5, "secure reach at 11.01 dB and decoy comparison", criterion5},
        {6, "dominance and loss monotonicity", criterion6},
        {7, "simulation determinism", criterion7},
    };

    std::vector<int> selected;
    if (argc <= 1 || std::string(argv[1]) == "all") {
        for (const auto& c : criteria) selected.push_back(c.id);
    } else {
        for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    }

    bool all_ok = true;
    for (const auto& c : criteria) {
        bool wanted = false;
        for (int id : selected) wanted = wanted || id == c.id;
        if (!wanted) continue;
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& ex) {
            std::printf("  exception: %s\n", ex.what());
        }
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.name);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
