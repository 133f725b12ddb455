#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "authsim/attacks.hpp"
#include "authsim/channel.hpp"
#include "authsim/detectors.hpp"
#include "authsim/ocnn.hpp"
#include "authsim/stats.hpp"

namespace authsim {

enum class DetectorKind { llr, combined, ocnn };

// How the quadratic test obtains its threshold.
//  - analytic:        noncentral chi-square quantile with the per-trial
//                     noncentrality taken from the true channel realization.
//  - analytic_plugin: same, but the noncentrality uses the verifier's noisy
//                     reference instead of the true channel.
//  - mc_quantile:     empirical quantile of the statistic over a dedicated
//                     legitimate calibration pool.
enum class LlrCalibration { analytic, analytic_plugin, mc_quantile };

struct DetectorSpec {
    DetectorKind kind = DetectorKind::llr;
    LlrCalibration calibration = LlrCalibration::analytic;
    bool assume_flat_sigma2 = false;  // verifier unaware of the fading correlation
    bool matched_exponent = false;    // re-optimize the attack exponent against the final rule
    OcnnVariant variant = OcnnVariant::nn1k;
    double ocnn_target_pfa = 1e-3;
};

// A fully specified Monte Carlo experiment. Every reported number is a
// deterministic function of (scenario, seed); worker count never changes
// results.
struct Scenario {
    std::string name = "custom";
    SystemParams params = SystemParams::uniform(1, 1.0, 0.0, 0.0, 0.0);
    DetectorSpec detector;
    AttackStrategy attack = AttackStrategy::llr();
    double target_pfa = 1e-4;
    std::uint64_t trials_h0 = 1'000'000;
    std::uint64_t trials_h1 = 1'000'000;
    std::uint64_t seed = 1;

    // Monte Carlo budgets of the calibration machinery.
    std::size_t opt_budget = 1'000'000;        // (theta, epsilon) search pool size
    std::size_t attack_grid_budget = 100'000;  // shared pool for the exponent search
    double attack_grid_step = 0.1;

    // One-class classifier protocol: training draws per session and the
    // number of independent sessions the error rates are averaged over.
    std::size_t ocnn_training_size = 1000;
    std::size_t ocnn_sessions = 1;
    int cv_folds = 10;
};

struct ErrorRates {
    double pfa = 0.0;
    double pmd = 0.0;
    Interval pfa_ci;
    Interval pmd_ci;
    std::uint64_t trials_h0 = 0;
    std::uint64_t trials_h1 = 0;
    std::uint64_t fa_events = 0;
    std::uint64_t md_events = 0;
    bool zero_event_fa = false;
    bool zero_event_md = false;
    bool mc_recalibrated = false;  // analytic calibration missed the band and fell back

    bool zero_event() const { return zero_event_fa || zero_event_md; }
};

// Runs one scenario end to end: calibrate the detector, evaluate false-alarm
// and missed-detection rates with Wilson 95% intervals. Calibration failures
// surface as CalibrationError with the scenario name attached.
ErrorRates run_scenario(const Scenario& scenario, int workers = 1);

// Multi-detector evaluation of one operating point, with the statistical
// detectors compared to the classifier at a common false-alarm level: at
// alpha = 1 all detectors run at scenario.target_pfa; under fading the
// statistical thresholds are re-calibrated to the classifier's measured
// false-alarm rate (the classifier is frozen at setup, so its false-alarm
// rate is an outcome, not a knob). Statistical detectors are evaluated on
// shared trial pools under their matched attacks.
struct TableCell {
    ErrorRates llr;
    ErrorRates combined;
    ErrorRates ocnn;
    double stat_target_pfa = 0.0;  // false-alarm level the statistical rules aim at
    double attack_exponent = 1.0;  // exponent used against the combined rule
};
TableCell run_table_cell(const Scenario& scenario, int workers = 1);

// Parameter sweep with common random numbers: every point reuses the base
// seed schedule, so paired comparisons across the axis see the same draws.
// Axes: n_channels, alpha, rho_ae, target_pfa, snr (setup-phase SNR in dB).
std::vector<ErrorRates> sweep(const Scenario& base, const std::string& axis,
                              const std::vector<double>& values, int workers = 1);
Scenario scenario_at(const Scenario& base, const std::string& axis, double value);

// Named scenario registry (operating points of the reproduced experiments).
std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name);
std::string scenario_description(const std::string& name);

// Fits the scenario's classifier on its dedicated tuning streams; the same
// call the engine makes internally, exposed for model export.
OcnnModel tune_ocnn_for_scenario(const Scenario& scenario);

}  // namespace authsim
