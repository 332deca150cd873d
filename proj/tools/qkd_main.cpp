#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qkd/channel_model.hpp"
#include "qkd/core.hpp"
#include "qkd/decoy_bounds.hpp"
#include "qkd/io.hpp"
#include "qkd/montecarlo.hpp"
#include "qkd/planner.hpp"
#include "qkd/svg.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompute = 2;
constexpr int kExitInsecure = 3;

void write_manifest_sidecar(const std::string& out_path, const json& manifest) {
    std::ofstream out(out_path + ".manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest for " + out_path);
    out << manifest.dump(2) << '\n';
}

int run_bounds(const std::string& input, double mu, double nu, double f_ec,
               double e0, const std::string& out_path) {
    const auto rows = qkd::parse_measured_table(input);
    const qkd::IntensitySet intensities(mu, nu);
    // eta_bob/e_detector do not enter the bound pipeline; only e0 and f_ec do.
    const qkd::DeviceParams params(1.0, 0.0, 0.0, e0, f_ec);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << "loss_db,y1_l,y12_l,q12_l,eps12_u,r_l,clamped,insecure\n";
    for (const auto& [channel, stats] : rows) {
        const qkd::BoundsResult b = qkd::analyze(stats, intensities, params);
        out << qkd::format_double(channel.loss_db) << ','
            << qkd::format_double(b.y1_l) << ',' << qkd::format_double(b.y12_l)
            << ',' << qkd::format_double(b.q12_l) << ','
            << qkd::format_double(b.eps12_u) << ',' << qkd::format_double(b.r_l)
            << ',' << (b.clamped ? 1 : 0) << ',' << (b.insecure ? 1 : 0) << '\n';
    }
    out.close();

    write_manifest_sidecar(
        out_path,
        qkd::make_manifest("bounds",
                           json{{"input", input}, {"mu", mu}, {"nu", nu},
                                {"f_ec", f_ec}, {"e0", e0}, {"out", out_path}},
                           {input}));
    return kExitOk;
}

int run_predict(const qkd::DeviceParams& params, double mu, double nu,
                double loss_min, double loss_max, double loss_step,
                double pulse_rate_hz, const std::string& out_path,
                const std::string& svg_path) {
    if (loss_min > loss_max)
        throw CLI::ValidationError("predict", "--loss-min must be <= --loss-max");
    if (!(loss_step > 0.0))
        throw CLI::ValidationError("predict", "--loss-step must be > 0");

    const qkd::IntensitySet intensities(mu, nu);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << "loss_db,r_l,r_inf,r_l_per_sec\n";

    qkd::SvgSeries wv{"weak+vacuum bound", "#1f6fb2", {}, {}};
    qkd::SvgSeries inf{"infinite decoy", "#c23b22", {}, {}};
    for (double loss = loss_min; loss <= loss_max + 1e-9; loss += loss_step) {
        const qkd::ChannelPoint channel(loss);
        const auto predicted = qkd::predict_stats(params, channel, intensities);
        const double r_l =
            qkd::analyze(predicted.as_measured(), intensities, params).r_l;
        const double r_inf = qkd::infinite_decoy_rate(params, channel, mu);
        out << qkd::format_double(loss) << ',' << qkd::format_double(r_l) << ','
            << qkd::format_double(r_inf) << ','
            << qkd::format_double(r_l * pulse_rate_hz) << '\n';
        wv.x.push_back(loss);
        wv.y.push_back(r_l);
        inf.x.push_back(loss);
        inf.y.push_back(r_inf);
    }
    out.close();

    if (!svg_path.empty())
        qkd::write_svg_chart(svg_path, "Secure key rate vs channel loss",
                             "channel loss (dB)", "key rate per pulse",
                             {wv, inf});
    write_manifest_sidecar(
        out_path,
        qkd::make_manifest("predict",
                           json{{"eta_bob", params.eta_bob},
                                {"e_detector", params.e_detector},
                                {"y0", params.y0}, {"e0", params.e0},
                                {"f_ec", params.f_ec}, {"mu", mu}, {"nu", nu},
                                {"loss_min", loss_min}, {"loss_max", loss_max},
                                {"loss_step", loss_step},
                                {"pulse_rate_hz", pulse_rate_hz},
                                {"out", out_path}, {"svg", svg_path}},
                           {}));
    return kExitOk;
}

json tally_to_json(const qkd::ClassTally& t) {
    return json{{"sent", t.sent}, {"clicks", t.clicks}, {"bit_errors", t.bit_errors}};
}

int run_simulate(const qkd::MCConfig& config, const std::string& out_path) {
    const qkd::TallySet tallies = qkd::simulate_run(config);

    json report;
    report["config"] = json{
        {"n_pulses", config.n_pulses},
        {"seed", config.seed},
        {"class_probs", config.class_probs},
        {"control_mode_prob", config.control_mode_prob},
        {"eta_bob", config.params.eta_bob},
        {"e_detector", config.params.e_detector},
        {"y0", config.params.y0},
        {"e0", config.params.e0},
        {"f_ec", config.params.f_ec},
        {"loss_db", config.channel.loss_db},
        {"mu", config.intensities.mu},
        {"nu", config.intensities.nu},
        {"pulse_rate_hz", config.pulse_rate_hz},
        {"workers", config.workers},
    };
    report["tallies"] = json{{"signal", tally_to_json(tallies.signal)},
                             {"weak", tally_to_json(tallies.weak)},
                             {"vacuum", tally_to_json(tallies.vacuum)},
                             {"control_sent", tallies.control_sent},
                             {"control_clicks", tallies.control_clicks}};

    const qkd::EstimatedStats est = qkd::estimate_stats(tallies);
    report["estimated_stats"] =
        json{{"q_mu", est.q_mu},
             {"e_mu", est.e_mu ? json(*est.e_mu) : json(nullptr)},
             {"q_nu", est.q_nu},
             {"e_nu", est.e_nu ? json(*est.e_nu) : json(nullptr)},
             {"y0", est.y0}};

    try {
        const qkd::TaggedRates tagged = qkd::true_tagged_stats(tallies);
        report["true_tagged"] = json{{"q12", tagged.q12},
                                     {"e12", tagged.e12},
                                     {"clicks", tagged.clicks}};

        const qkd::BoundsResult b =
            qkd::analyze(est.to_measured(), config.intensities, config.params);
        report["bounds"] = json{{"y1_l", b.y1_l},     {"y12_l", b.y12_l},
                                {"q12_l", b.q12_l},   {"eps12_u", b.eps12_u},
                                {"r_l", b.r_l},
                                {"r_l_per_sec", b.r_l * config.pulse_rate_hz},
                                {"clamped", b.clamped}, {"insecure", b.insecure}};

        const double sigma_q12 = std::sqrt(tagged.q12 * (1.0 - tagged.q12)
                                           / static_cast<double>(tagged.sent));
        const double sigma_e12 =
            tagged.clicks > 0
                ? std::sqrt(tagged.e12 * (1.0 - tagged.e12)
                            / static_cast<double>(tagged.clicks))
                : 0.0;
        report["sandwich"] =
            json{{"q12_lower_holds", b.q12_l <= tagged.q12 + 3.0 * sigma_q12},
                 {"eps12_upper_holds", b.eps12_u >= tagged.e12 - 3.0 * sigma_e12},
                 {"sigma_q12", sigma_q12},
                 {"sigma_e12", sigma_e12}};
    } catch (const std::runtime_error& ex) {
        report["true_tagged"] = json{{"error", ex.what()}};
        report["bounds"] = nullptr;
        report["sandwich"] = nullptr;
    }

    report["manifest"] = qkd::make_manifest("simulate", report["config"], {});

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << report.dump(2) << '\n';
    return kExitOk;
}

int run_plan(const qkd::DeviceParams& params, bool maxloss, double loss,
             double mu, double nu) {
    if (maxloss) {
        const qkd::IntensitySet intensities(mu, nu);
        double wv = 0.0;
        try {
            wv = qkd::max_secure_loss(params, intensities, qkd::RateModel::WeakVacuum);
        } catch (const std::runtime_error&) {
            std::cout << "insecure at zero loss: no positive rate anywhere\n";
            std::cout << json{{"secure", false}}.dump() << '\n';
            return kExitInsecure;
        }
        const double inf = qkd::max_secure_loss(
            params, intensities, qkd::RateModel::InfiniteDecoy, /*optimize_mu=*/true);
        std::cout << "max secure loss, weak+vacuum bound at (mu=" << mu
                  << ", nu=" << nu << "): " << wv << " dB\n"
                  << "max secure loss, infinite decoy at optimal mu: " << inf
                  << " dB\n";
        std::cout << json{{"secure", true},
                          {"max_secure_loss_db", wv},
                          {"max_secure_loss_infinite_decoy_db", inf},
                          {"mu", mu},
                          {"nu", nu}}.dump()
                  << '\n';
        return kExitOk;
    }

    const qkd::PlanResult plan =
        qkd::optimize_intensities(params, qkd::ChannelPoint(loss));
    if (!plan.secure) {
        std::cout << "insecure everywhere: no (mu, nu) gives a positive rate at "
                  << loss << " dB\n";
        std::cout << json{{"secure", false}, {"loss_db", loss},
                          {"evaluations", plan.evaluations}}.dump()
                  << '\n';
        return kExitInsecure;
    }
    std::cout << "optimal intensities at " << loss << " dB: mu=" << plan.best_mu
              << " nu=" << plan.best_nu << " rate=" << plan.best_rate
              << " per pulse (" << plan.evaluations << " evaluations)\n";
    std::cout << json{{"secure", true},
                      {"loss_db", loss},
                      {"best_mu", plan.best_mu},
                      {"best_nu", plan.best_nu},
                      {"best_rate", plan.best_rate},
                      {"evaluations", plan.evaluations}}.dump()
              << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoy-state analysis toolkit for two-way QKD"};
    app.require_subcommand(1);

    // bounds
    auto* bounds = app.add_subcommand(
        "bounds", "Compute decoy-state bounds from a measured-statistics CSV");
    std::string bounds_input, bounds_out;
    double bounds_mu = 0.0, bounds_nu = 0.0, bounds_fec = 1.22, bounds_e0 = 0.5;
    bounds->add_option("--input", bounds_input, "measured table CSV")->required();
    bounds->add_option("--mu", bounds_mu, "signal mean photon number")->required();
    bounds->add_option("--nu", bounds_nu, "weak decoy mean photon number")->required();
    bounds->add_option("--f-ec", bounds_fec, "error-correction inefficiency");
    bounds->add_option("--e0", bounds_e0, "background error probability");
    bounds->add_option("--out", bounds_out, "output CSV")->required();

    // predict
    auto* predict = app.add_subcommand(
        "predict", "Forward-model rate sweep over a channel loss range");
    double p_eta = 0.0, p_edet = 0.0, p_y0 = 0.0, p_e0 = 0.5, p_fec = 1.22;
    double p_mu = 0.0, p_nu = 0.0, p_lmin = 0.0, p_lmax = 0.0, p_lstep = 0.5;
    double p_rate = 7.25e5;
    std::string p_out, p_svg;
    predict->add_option("--eta-bob", p_eta, "receiver transmittance")->required();
    predict->add_option("--e-det", p_edet, "erroneous detection probability")->required();
    predict->add_option("--y0", p_y0, "background yield")->required();
    predict->add_option("--e0", p_e0, "background error probability");
    predict->add_option("--f-ec", p_fec, "error-correction inefficiency");
    predict->add_option("--mu", p_mu, "signal mean photon number")->required();
    predict->add_option("--nu", p_nu, "weak decoy mean photon number")->required();
    predict->add_option("--loss-min", p_lmin, "sweep start, dB")->required();
    predict->add_option("--loss-max", p_lmax, "sweep end, dB")->required();
    predict->add_option("--loss-step", p_lstep, "sweep step, dB");
    predict->add_option("--pulse-rate", p_rate, "pulse rate, Hz");
    predict->add_option("--out", p_out, "output CSV")->required();
    predict->add_option("--svg", p_svg, "optional SVG chart path");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Pulse-level Monte Carlo run with ground-truth tags");
    std::uint64_t s_pulses = 0, s_seed = 1;
    double s_loss = 0.0, s_eta = 0.0, s_edet = 0.0, s_y0 = 0.0, s_e0 = 0.5;
    double s_fec = 1.22, s_mu = 0.0, s_nu = 0.0, s_control = 0.5, s_rate = 7.25e5;
    unsigned s_workers = 1;
    std::vector<double> s_class_probs{0.5, 0.25, 0.25};
    std::string s_out;
    simulate->add_option("--pulses", s_pulses, "number of pulses")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", s_seed, "RNG seed");
    simulate->add_option("--loss", s_loss, "channel loss, dB")->required();
    simulate->add_option("--eta-bob", s_eta, "receiver transmittance")->required();
    simulate->add_option("--e-det", s_edet, "erroneous detection probability")->required();
    simulate->add_option("--y0", s_y0, "background yield")->required();
    simulate->add_option("--e0", s_e0, "background error probability");
    simulate->add_option("--f-ec", s_fec, "error-correction inefficiency");
    simulate->add_option("--mu", s_mu, "signal mean photon number")->required();
    simulate->add_option("--nu", s_nu, "weak decoy mean photon number")->required();
    simulate->add_option("--control-prob", s_control, "control-mode probability");
    simulate->add_option("--class-probs", s_class_probs,
                         "signal/weak/vacuum mixing probabilities")
        ->expected(3);
    simulate->add_option("--pulse-rate", s_rate, "pulse rate, Hz");
    simulate->add_option("--workers", s_workers, "worker thread count");
    simulate->add_option("--out", s_out, "output JSON report")->required();

    // plan
    auto* plan = app.add_subcommand(
        "plan", "Optimal intensities or maximum secure loss");
    double n_eta = 0.0, n_edet = 0.0, n_y0 = 0.0, n_e0 = 0.5, n_fec = 1.22;
    double n_loss = 0.0, n_mu = 0.0, n_nu = 0.0;
    bool n_maxloss = false;
    plan->add_option("--eta-bob", n_eta, "receiver transmittance")->required();
    plan->add_option("--e-det", n_edet, "erroneous detection probability")->required();
    plan->add_option("--y0", n_y0, "background yield")->required();
    plan->add_option("--e0", n_e0, "background error probability");
    plan->add_option("--f-ec", n_fec, "error-correction inefficiency");
    auto* loss_opt = plan->add_option("--loss", n_loss, "channel point to optimize, dB");
    auto* maxloss_opt =
        plan->add_flag("--maxloss", n_maxloss, "find maximum secure loss");
    plan->add_option("--mu", n_mu, "signal mean photon number (for --maxloss)");
    plan->add_option("--nu", n_nu, "weak decoy mean photon number (for --maxloss)");
    loss_opt->excludes(maxloss_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds)
            return run_bounds(bounds_input, bounds_mu, bounds_nu, bounds_fec,
                              bounds_e0, bounds_out);
        if (*predict)
            return run_predict(qkd::DeviceParams(p_eta, p_edet, p_y0, p_e0, p_fec),
                               p_mu, p_nu, p_lmin, p_lmax, p_lstep, p_rate, p_out,
                               p_svg);
        if (*simulate) {
            qkd::MCConfig config{
                .n_pulses = s_pulses,
                .seed = s_seed,
                .class_probs = {s_class_probs[0], s_class_probs[1], s_class_probs[2]},
                .control_mode_prob = s_control,
                .params = qkd::DeviceParams(s_eta, s_edet, s_y0, s_e0, s_fec),
                .channel = qkd::ChannelPoint(s_loss),
                .intensities = qkd::IntensitySet(s_mu, s_nu),
                .pulse_rate_hz = s_rate,
                .workers = s_workers,
            };
            return run_simulate(config, s_out);
        }
        if (*plan) {
            if (!n_maxloss && loss_opt->count() == 0)
                throw CLI::ValidationError("plan", "either --loss or --maxloss is required");
            if (n_maxloss && (n_mu == 0.0 || n_nu == 0.0))
                throw CLI::ValidationError("plan", "--maxloss requires --mu and --nu");
            return run_plan(qkd::DeviceParams(n_eta, n_edet, n_y0, n_e0, n_fec),
                            n_maxloss, n_loss, n_mu, n_nu);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qkd::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitUsage;
}
