#include "authsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "authsim/parallel.hpp"

namespace authsim {

namespace {

// Stream-id tags; each tag owns a disjoint slice of the 64-bit stream space
// under the scenario seed. aux carries the session index where applicable.
constexpr std::uint64_t kTagH0Eval = 1;
constexpr std::uint64_t kTagH1Eval = 2;
constexpr std::uint64_t kTagOptPool = 3;
constexpr std::uint64_t kTagExponentPool = 4;
constexpr std::uint64_t kTagOcnnTune = 5;
constexpr std::uint64_t kTagOcnnSession = 6;
constexpr std::uint64_t kTagOcnnH0 = 7;
constexpr std::uint64_t kTagOcnnH1 = 8;
constexpr std::uint64_t kTagLlrCalib = 9;

StreamFamily family(const Scenario& s, std::uint64_t tag, std::uint64_t aux = 0) {
    return {s.seed, stream_tag(tag, aux)};
}

bool flat_fading(const SystemParams& p) {
    return std::all_of(p.alpha.begin(), p.alpha.end(), [](double a) { return a == 1.0; });
}

ErrorRates assemble_rates(std::uint64_t fa, std::uint64_t n0, std::uint64_t md,
                          std::uint64_t n1) {
    ErrorRates r;
    r.trials_h0 = n0;
    r.trials_h1 = n1;
    r.fa_events = fa;
    r.md_events = md;
    r.pfa = n0 ? static_cast<double>(fa) / static_cast<double>(n0) : 0.0;
    r.pmd = n1 ? static_cast<double>(md) / static_cast<double>(n1) : 0.0;
    r.pfa_ci = wilson_interval(fa, n0);
    r.pmd_ci = wilson_interval(md, n1);
    r.zero_event_fa = n0 > 0 && fa == 0;
    r.zero_event_md = n1 > 0 && md == 0;
    return r;
}

// Empirical calibration of the quadratic rule over a legitimate pool,
// leaving ceil((1 - pfa) * budget) trials accepted. Two flavors:
//  - fixed threshold: rank quantile of the statistic itself;
//  - per-realization family (genie = true): rank quantile of the
//    conditional p-value F(psi; 2N, mu(h)), preserving the analytic rule's
//    dependence on the trial's own noncentrality while hitting the
//    requested level empirically.
double mc_calibrate_llr(const SystemParams& params, std::span<const double> sigma2,
                        double target_pfa, std::size_t budget, StreamFamily streams,
                        int workers, bool genie) {
    if (static_cast<double>(budget) * target_pfa < 100.0)
        throw CalibrationError("mc threshold calibration: budget too small for target " +
                               std::to_string(target_pfa));
    std::vector<double> stat(budget);
    const std::size_t n = params.n_channels;
    parallel_for_chunks(budget, workers, [&](std::size_t b, std::size_t e, unsigned) {
        std::vector<std::complex<double>> h(n), ref(n), obs(n);
        for (std::size_t t = b; t < e; ++t) {
            Rng rng = streams.at(t);
            draw_channel_into(h, params, rng);
            setup_estimate_into(ref, h, params, rng);
            legit_observation_into(obs, h, params, rng);
            const double psi = llr_statistic(obs, ref, sigma2);
            if (genie) {
                double mu = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    mu += std::norm((params.alpha[i] - 1.0) * h[i]) / sigma2[i];
                stat[t] = nc_chi2_cdf(psi, NoncentralChi2(static_cast<int>(2 * n), mu));
            } else {
                stat[t] = psi;
            }
        }
    });
    const auto want = static_cast<std::size_t>(
        std::ceil((1.0 - target_pfa) * static_cast<double>(budget)));
    std::nth_element(stat.begin(), stat.begin() + (want - 1), stat.end());
    return stat[want - 1];
}

struct StatCounts {
    std::uint64_t llr_fa = 0;
    std::uint64_t llr_md = 0;
    std::uint64_t comb_fa = 0;
    std::uint64_t comb_md = 0;
};

// Evaluation spec for the statistic-based detectors. The quadratic rule is
// either a fixed threshold or the per-trial analytic rule; the combined rule,
// when present, is evaluated on the same trials (with its own matched
// forgery on the forged pool).
struct StatEvalSpec {
    std::vector<double> sigma2;
    bool analytic = false;      // per-trial noncentral threshold
    bool plugin_mu = false;     // noncentrality from the reference estimate
    bool genie_u = false;       // per-realization family at an empirical level
    double target_pfa = 1e-4;   // analytic-mode target
    double theta = 0.0;         // fixed threshold (mc mode)
    double u_star = 1.0;        // conditional p-value cut (genie_u mode)
    const AttackStrategy* llr_h1_attack = nullptr;
    const CombinedRule* comb = nullptr;
    const AttackStrategy* comb_h1_attack = nullptr;

    bool needs_mu() const { return analytic || genie_u; }
};

bool llr_accepts(const StatEvalSpec& spec, double psi, double mu, std::size_t n_channels) {
    if (spec.genie_u)
        return nc_chi2_cdf(psi, NoncentralChi2(static_cast<int>(2 * n_channels), mu)) <=
               spec.u_star;
    if (spec.analytic)
        return llr_accepts_analytic(psi, mu, n_channels, spec.target_pfa);
    return psi <= spec.theta;
}

StatCounts stat_h0_pass(const SystemParams& params, const StatEvalSpec& spec,
                        std::uint64_t trials, StreamFamily streams, int workers) {
    const std::size_t n = params.n_channels;
    std::vector<StatCounts> slot(std::max<std::size_t>(1, static_cast<std::size_t>(workers)));
    parallel_for_chunks(trials, workers, [&](std::size_t b, std::size_t e, unsigned w) {
        std::vector<std::complex<double>> h(n), ref(n), obs(n);
        StatCounts local;
        for (std::size_t t = b; t < e; ++t) {
            Rng rng = streams.at(t);
            draw_channel_into(h, params, rng);
            setup_estimate_into(ref, h, params, rng);
            legit_observation_into(obs, h, params, rng);
            const double psi = llr_statistic(obs, ref, spec.sigma2);
            double mu = 0.0;
            if (spec.needs_mu()) {
                const auto& src = spec.plugin_mu ? ref : h;
                for (std::size_t i = 0; i < n; ++i)
                    mu += std::norm((params.alpha[i] - 1.0) * src[i]) / spec.sigma2[i];
            }
            if (!llr_accepts(spec, psi, mu, n)) ++local.llr_fa;
            if (spec.comb != nullptr) {
                const double gamma = modulus_statistic(obs, ref);
                if (decide(psi, gamma, *spec.comb) == Hypothesis::h1) ++local.comb_fa;
            }
        }
        slot[w] = local;
    });
    StatCounts total;
    for (const auto& c : slot) {
        total.llr_fa += c.llr_fa;
        total.comb_fa += c.comb_fa;
    }
    return total;
}

StatCounts stat_h1_pass(const SystemParams& params, const StatEvalSpec& spec,
                        std::uint64_t trials, StreamFamily streams, int workers) {
    const std::size_t n = params.n_channels;
    std::vector<StatCounts> slot(std::max<std::size_t>(1, static_cast<std::size_t>(workers)));
    parallel_for_chunks(trials, workers, [&](std::size_t b, std::size_t e, unsigned w) {
        std::vector<std::complex<double>> h(n), ref(n), ae(n), eb(n), g(n), obs(n), noise(n);
        StatCounts local;
        for (std::size_t t = b; t < e; ++t) {
            Rng rng = streams.at(t);
            draw_channel_into(h, params, rng);
            setup_estimate_into(ref, h, params, rng);
            eve_observations_into(ae, eb, h, params, rng);
            for (std::size_t i = 0; i < n; ++i) noise[i] = rng.complex_gaussian(params.sigma2_ii);

            double mu = 0.0;
            if (spec.needs_mu()) {
                const auto& src = spec.plugin_mu ? ref : h;
                for (std::size_t i = 0; i < n; ++i)
                    mu += std::norm((params.alpha[i] - 1.0) * src[i]) / spec.sigma2[i];
            }
            if (spec.llr_h1_attack != nullptr) {
                forge_into(g, *spec.llr_h1_attack, ae, eb, params);
                for (std::size_t i = 0; i < n; ++i) obs[i] = g[i] + noise[i];
                const double psi = llr_statistic(obs, ref, spec.sigma2);
                if (llr_accepts(spec, psi, mu, n)) ++local.llr_md;
            }
            if (spec.comb != nullptr) {
                forge_into(g, *spec.comb_h1_attack, ae, eb, params);
                for (std::size_t i = 0; i < n; ++i) obs[i] = g[i] + noise[i];
                const double psi = llr_statistic(obs, ref, spec.sigma2);
                const double gamma = modulus_statistic(obs, ref);
                if (decide(psi, gamma, *spec.comb) == Hypothesis::h0) ++local.comb_md;
            }
        }
        slot[w] = local;
    });
    StatCounts total;
    for (const auto& c : slot) {
        total.llr_md += c.llr_md;
        total.comb_md += c.comb_md;
    }
    return total;
}

// Feature view of a complex vector; std::complex<double> is layout
// compatible with double[2].
std::span<const double> feature_view(const ComplexVector& v) {
    return {reinterpret_cast<const double*>(v.data()), 2 * v.size()};
}

struct OcnnRun {
    std::uint64_t fa = 0, n0 = 0, md = 0, n1 = 0;
    OcnnModel tuned;  // tuning-session model (carries j, k, theta_d)
};

// Classifier training set: observations of the initial channel state, i.e.
// the authentication-phase estimator evaluated at setup time (unit time
// correlation, observation noise). The fading correlation plays no role, so
// a trained model is a fixed reference across the whole fading sweep.
std::vector<FeatureVector> draw_training_features(const SystemParams& params,
                                                  std::size_t count, StreamFamily streams,
                                                  ComplexVector& h_out) {
    Rng ch = streams.at(0);
    h_out.resize(params.n_channels);
    draw_channel_into(h_out, params, ch);
    std::vector<FeatureVector> features;
    features.reserve(count);
    ComplexVector est(params.n_channels);
    for (std::size_t t = 0; t < count; ++t) {
        Rng rng = streams.at(1 + t);
        for (std::size_t i = 0; i < params.n_channels; ++i)
            est[i] = h_out[i] + rng.complex_gaussian(params.sigma2_ii);
        features.push_back(featurize(est));
    }
    return features;
}

OcnnRun run_ocnn(const Scenario& sc, int workers) {
    const SystemParams& params = sc.params;
    const std::size_t sessions = std::max<std::size_t>(1, sc.ocnn_sessions);
    const std::uint64_t h0_per_session = sc.trials_h0 / sessions;
    const std::uint64_t h1_per_session = sc.trials_h1 / sessions;
    if (h0_per_session == 0 || h1_per_session == 0)
        throw std::invalid_argument(sc.name + ": trial budgets smaller than the session count");

    OcnnRun run;
    run.tuned = tune_ocnn_for_scenario(sc);

    for (std::size_t s = 0; s < sessions; ++s) {
        ComplexVector h_session;
        const auto features = draw_training_features(params, sc.ocnn_training_size,
                                                     family(sc, kTagOcnnSession, s), h_session);
        OcnnModel model;
        model.variant = run.tuned.variant;
        model.j = run.tuned.j;
        model.k = run.tuned.k;
        model.theta_d = run.tuned.theta_d;
        model.dim = 2 * params.n_channels;
        model.training.reserve(features.size() * model.dim);
        for (const auto& f : features)
            model.training.insert(model.training.end(), f.begin(), f.end());
        model.finalize();

        const StreamFamily f0 = family(sc, kTagOcnnH0, s);
        const StreamFamily f1 = family(sc, kTagOcnnH1, s);
        std::vector<std::uint64_t> fa_slot(std::max(1, workers), 0);
        std::vector<std::uint64_t> md_slot(std::max(1, workers), 0);

        parallel_for_chunks(h0_per_session, workers, [&](std::size_t b, std::size_t e,
                                                         unsigned w) {
            ComplexVector obs(params.n_channels);
            std::uint64_t local = 0;
            for (std::size_t t = b; t < e; ++t) {
                Rng rng = f0.at(t);
                legit_observation_into(obs, h_session, params, rng);
                if (!ocnn_accepts(feature_view(obs), model)) ++local;
            }
            fa_slot[w] = local;
        });
        parallel_for_chunks(h1_per_session, workers, [&](std::size_t b, std::size_t e,
                                                         unsigned w) {
            ComplexVector ae(params.n_channels), eb(params.n_channels), g(params.n_channels),
                obs(params.n_channels);
            std::uint64_t local = 0;
            for (std::size_t t = b; t < e; ++t) {
                Rng rng = f1.at(t);
                eve_observations_into(ae, eb, h_session, params, rng);
                forge_into(g, sc.attack, ae, eb, params);
                for (std::size_t i = 0; i < params.n_channels; ++i)
                    obs[i] = g[i] + rng.complex_gaussian(params.sigma2_ii);
                if (ocnn_accepts(feature_view(obs), model)) ++local;
            }
            md_slot[w] = local;
        });

        for (auto v : fa_slot) run.fa += v;
        for (auto v : md_slot) run.md += v;
        run.n0 += h0_per_session;
        run.n1 += h1_per_session;
    }
    return run;
}

}  // namespace

OcnnModel tune_ocnn_for_scenario(const Scenario& scenario) {
    // The classifier's free parameters and threshold are fit once, on a
    // dedicated tuning session; the score is scale-free, so the fitted rule
    // transfers across channel realizations.
    ComplexVector h_tune;
    const auto features = draw_training_features(scenario.params, scenario.ocnn_training_size,
                                                 family(scenario, kTagOcnnTune), h_tune);
    return tune_ocnn(features, scenario.detector.variant, scenario.detector.ocnn_target_pfa,
                     scenario.cv_folds);
}

ErrorRates run_scenario(const Scenario& scenario, int workers) {
    const Scenario& sc = scenario;
    sc.params.validate();

    if (sc.detector.kind == DetectorKind::ocnn) {
        const OcnnRun run = run_ocnn(sc, workers);
        return assemble_rates(run.fa, run.n0, run.md, run.n1);
    }

    StatEvalSpec spec;
    spec.sigma2 = per_channel_sigma2(sc.params, sc.detector.assume_flat_sigma2);
    spec.target_pfa = sc.target_pfa;

    AttackStrategy comb_attack = sc.attack;
    CombinedRule comb;
    if (sc.detector.kind == DetectorKind::combined) {
        try {
            comb = optimize_thresholds(sc.params, sc.target_pfa, sc.attack, sc.opt_budget,
                                       family(sc, kTagOptPool), workers);
        } catch (const CalibrationError& e) {
            throw CalibrationError(sc.name + ": " + e.what());
        }
        if (sc.detector.matched_exponent) {
            comb_attack = AttackStrategy::exponent_attack(
                optimize_attack_exponent(sc.params, comb, sc.attack_grid_step,
                                         sc.attack_grid_budget,
                                         family(sc, kTagExponentPool), workers));
        }
        spec.comb = &comb;
        spec.comb_h1_attack = &comb_attack;
    } else {
        switch (sc.detector.calibration) {
            case LlrCalibration::analytic:
                spec.analytic = true;
                break;
            case LlrCalibration::analytic_plugin:
                spec.analytic = true;
                spec.plugin_mu = true;
                break;
            case LlrCalibration::mc_quantile:
                spec.theta = mc_calibrate_llr(sc.params, spec.sigma2, sc.target_pfa,
                                              sc.opt_budget, family(sc, kTagLlrCalib), workers,
                                              /*genie=*/false);
                break;
        }
        // Flat fading empties the noncentrality; use the fixed central
        // threshold instead of a per-trial CDF evaluation.
        if (spec.analytic && flat_fading(sc.params)) {
            spec.analytic = false;
            spec.theta = calibrate_llr_threshold(sc.target_pfa, 0.0, sc.params.n_channels);
        }
        spec.llr_h1_attack = &sc.attack;
    }

    StatCounts h0 = stat_h0_pass(sc.params, spec, sc.trials_h0, family(sc, kTagH0Eval), workers);
    StatCounts h1 = stat_h1_pass(sc.params, spec, sc.trials_h1, family(sc, kTagH1Eval), workers);

    bool recalibrated = false;
    if (sc.detector.kind == DetectorKind::llr &&
        sc.detector.calibration != LlrCalibration::mc_quantile &&
        static_cast<double>(sc.trials_h0) * sc.target_pfa >= 50.0) {
        const double fa_rate =
            static_cast<double>(h0.llr_fa) / static_cast<double>(sc.trials_h0);
        if (fa_rate < 0.5 * sc.target_pfa || fa_rate > 2.0 * sc.target_pfa) {
            // Analytic calibration missed the acceptance band; fall back to
            // the empirical quantile and re-evaluate.
            spec.analytic = false;
            spec.theta = mc_calibrate_llr(sc.params, spec.sigma2, sc.target_pfa, sc.opt_budget,
                                          family(sc, kTagLlrCalib), workers, /*genie=*/false);
            h0 = stat_h0_pass(sc.params, spec, sc.trials_h0, family(sc, kTagH0Eval), workers);
            h1 = stat_h1_pass(sc.params, spec, sc.trials_h1, family(sc, kTagH1Eval), workers);
            recalibrated = true;
        }
    }

    ErrorRates rates;
    if (sc.detector.kind == DetectorKind::combined)
        rates = assemble_rates(h0.comb_fa, sc.trials_h0, h1.comb_md, sc.trials_h1);
    else
        rates = assemble_rates(h0.llr_fa, sc.trials_h0, h1.llr_md, sc.trials_h1);
    rates.mc_recalibrated = recalibrated;
    return rates;
}

TableCell run_table_cell(const Scenario& scenario, int workers) {
    const Scenario& sc = scenario;
    sc.params.validate();

    TableCell cell;
    {
        Scenario oc = sc;
        oc.detector.kind = DetectorKind::ocnn;
        cell.ocnn = run_scenario(oc, workers);
    }

    // Statistical detectors run at the scenario target under flat fading;
    // under fading they are re-calibrated to the classifier's measured
    // false-alarm rate so all rows share one operating point.
    double stat_target = sc.target_pfa;
    if (!flat_fading(sc.params) && cell.ocnn.fa_events > 0)
        stat_target = std::clamp(cell.ocnn.pfa, 1e-7, 1.0 - 1e-7);
    cell.stat_target_pfa = stat_target;

    const std::size_t budget = std::max<std::size_t>(
        sc.opt_budget, static_cast<std::size_t>(std::ceil(120.0 / stat_target)));

    StatEvalSpec spec;
    spec.sigma2 = per_channel_sigma2(sc.params, sc.detector.assume_flat_sigma2);
    spec.target_pfa = stat_target;
    if (flat_fading(sc.params)) {
        spec.theta = mc_calibrate_llr(sc.params, spec.sigma2, stat_target, budget,
                                      family(sc, kTagLlrCalib), workers, /*genie=*/false);
    } else {
        // Keep the analytic rule's per-realization threshold family but pin
        // its level empirically via the conditional p-value quantile.
        spec.genie_u = true;
        spec.u_star = mc_calibrate_llr(sc.params, spec.sigma2, stat_target, budget,
                                       family(sc, kTagLlrCalib), workers, /*genie=*/true);
    }
    spec.llr_h1_attack = &sc.attack;

    CombinedRule comb;
    try {
        comb = optimize_thresholds(sc.params, stat_target, sc.attack, budget,
                                   family(sc, kTagOptPool), workers);
    } catch (const CalibrationError& e) {
        throw CalibrationError(sc.name + ": " + e.what());
    }
    AttackStrategy comb_attack = sc.attack;
    if (sc.detector.matched_exponent) {
        comb_attack = AttackStrategy::exponent_attack(
            optimize_attack_exponent(sc.params, comb, sc.attack_grid_step, sc.attack_grid_budget,
                                     family(sc, kTagExponentPool), workers));
    }
    cell.attack_exponent = comb_attack.exponent;
    spec.comb = &comb;
    spec.comb_h1_attack = &comb_attack;

    const StatCounts h0 =
        stat_h0_pass(sc.params, spec, sc.trials_h0, family(sc, kTagH0Eval), workers);
    const StatCounts h1 =
        stat_h1_pass(sc.params, spec, sc.trials_h1, family(sc, kTagH1Eval), workers);

    cell.llr = assemble_rates(h0.llr_fa, sc.trials_h0, h1.llr_md, sc.trials_h1);
    cell.combined = assemble_rates(h0.comb_fa, sc.trials_h0, h1.comb_md, sc.trials_h1);
    return cell;
}

Scenario scenario_at(const Scenario& base, const std::string& axis, double value) {
    Scenario s = base;
    if (axis == "n_channels") {
        const auto n = static_cast<std::size_t>(value);
        if (static_cast<double>(n) != value || n < 1)
            throw std::invalid_argument("sweep: n_channels values must be positive integers");
        s.params.n_channels = n;
        s.params.alpha.assign(n, base.params.alpha.front());
        s.params.lambda.assign(n, base.params.lambda.front());
    } else if (axis == "alpha") {
        s.params.alpha.assign(s.params.n_channels, value);
    } else if (axis == "rho_ae") {
        s.params.rho_ae = value;
    } else if (axis == "target_pfa") {
        s.target_pfa = value;
    } else if (axis == "snr") {
        s.params.sigma2_i = std::pow(10.0, -value / 10.0);
    } else {
        throw std::invalid_argument("sweep: unknown axis '" + axis + "'");
    }
    s.params.validate();
    return s;
}

std::vector<ErrorRates> sweep(const Scenario& base, const std::string& axis,
                              const std::vector<double>& values, int workers) {
    std::vector<ErrorRates> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(run_scenario(scenario_at(base, axis, v), workers));
    return out;
}

// ============================================================================
// Scenario registry
// ============================================================================

namespace {

Scenario base_scenario() {
    Scenario s;
    s.params = SystemParams::uniform(1, 1.0, std::pow(10.0, -1.5), 0.01, 0.1);
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"fig2", "table1", "table2", "table3"}; }

std::string scenario_description(const std::string& name) {
    if (name == "fig2")
        return "missed-detection vs sub-carrier count; rho_ae=0.1, setup SNR 15 dB, "
               "noiseless observation phase, target false alarm 1e-4";
    if (name == "table1")
        return "optimal combined-attack exponent search operating point; setup SNR 15 dB, "
               "observation SNR 20 dB, target false alarm 1e-4";
    if (name == "table2")
        return "detector comparison at rho_ae=0.1; setup SNR 15 dB, observation SNR 20 dB, "
               "classifier-aligned false-alarm level 1e-3";
    if (name == "table3")
        return "detector comparison at rho_ae=0.8; setup SNR 15 dB, observation SNR 20 dB, "
               "classifier-aligned false-alarm level 1e-2";
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

Scenario make_scenario(const std::string& name) {
    Scenario s = base_scenario();
    s.name = name;
    if (name == "fig2") {
        s.params.sigma2_ii = 0.0;  // noiseless observation phase
        s.params.n_channels = 4;
        s.params.alpha.assign(4, 1.0);
        s.params.lambda.assign(4, 1.0);
        s.target_pfa = 1e-4;
        s.detector.kind = DetectorKind::llr;
        // Both curves of the figure live in the fixed-threshold family the
        // joint (theta, epsilon) search explores, so the quadratic test is
        // calibrated the same way; the per-realization analytic mode stays
        // available through the calibration switch.
        s.detector.calibration = LlrCalibration::mc_quantile;
        s.detector.matched_exponent = true;
        s.trials_h0 = 10'000'000;
        s.trials_h1 = 1'000'000;
        s.opt_budget = 2'000'000;
        s.seed = 61;
        return s;
    }
    if (name == "table1") {
        s.params.rho_ae = 0.5;
        s.target_pfa = 1e-4;
        s.detector.kind = DetectorKind::combined;
        s.detector.matched_exponent = true;
        s.opt_budget = 1'000'000;
        s.attack_grid_budget = 100'000;
        s.trials_h0 = 1'000'000;
        s.trials_h1 = 1'000'000;
        s.seed = 62;
        return s;
    }
    if (name == "table2" || name == "table3") {
        const bool near = name == "table3";  // adversary close to the verifier
        s.params.rho_ae = near ? 0.8 : 0.1;
        s.target_pfa = near ? 1e-2 : 1e-3;
        s.detector.kind = DetectorKind::ocnn;
        s.detector.variant = OcnnVariant::nn1k;
        s.detector.ocnn_target_pfa = s.target_pfa;
        s.detector.calibration = LlrCalibration::mc_quantile;
        s.detector.matched_exponent = true;
        s.trials_h0 = 1'000'000;
        s.trials_h1 = 1'000'000;
        s.opt_budget = 1'000'000;
        // The far-adversary table uses a single-data-set protocol (one setup
        // session, zero-event cells); the near-adversary table averages the
        // session-dependent rates over many setups.
        s.ocnn_sessions = near ? 100 : 1;
        s.seed = near ? 64 : 63;
        return s;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace authsim
