#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "authsim/attacks.hpp"
#include "authsim/channel.hpp"

namespace authsim {

// Quadratic-statistic threshold test. sigma2 holds the per-carrier variance
// sigma2_i + sigma2_ii + 1 - alpha_n^2 the statistic is normalized by.
struct LlrRule {
    double theta = 0.0;
    std::vector<double> sigma2;
};

// Joint test: accept only when the quadratic statistic stays below theta and
// the modulus-sum difference stays inside [-epsilon, epsilon].
struct CombinedRule {
    double theta = 0.0;
    double epsilon = 0.0;
    std::vector<double> sigma2;
};

// Per-carrier normalization variances for a parameter set. The verifier may
// not track the fading correlation, in which case it falls back to the flat
// assumption alpha = 1.
std::vector<double> per_channel_sigma2(const SystemParams& params, bool assume_flat = false);

// Quadratic log-likelihood-ratio statistic
//   psi = 2 sum_n |obs_n - ref_n|^2 / sigma2_n.
// Throws std::invalid_argument on length mismatch or nonpositive sigma2.
double llr_statistic(std::span<const std::complex<double>> obs,
                     std::span<const std::complex<double>> ref, std::span<const double> sigma2);

// Noncentrality of the statistic's conditional law:
//   mu:   v carries the per-entry values (alpha_n - 1) h_n; sum |v_n|^2 / sigma2_n
//   beta: v carries the forged entries g_n; sum |v_n - ref_n|^2 / sigma2_n
enum class NoncentralityMode { mu, beta };
double noncentrality(std::span<const std::complex<double>> v,
                     std::span<const std::complex<double>> ref_channel,
                     std::span<const double> sigma2, NoncentralityMode mode);

// Analytic threshold: the (1 - target_pfa) quantile of the noncentral
// chi-square law with 2 * n_channels degrees of freedom and noncentrality mu.
double calibrate_llr_threshold(double target_pfa, double mu, std::size_t n_channels);

// Modulus-sum comparison statistic gamma = sum_n (|ref_n| - |obs_n|).
double modulus_statistic(std::span<const std::complex<double>> obs,
                         std::span<const std::complex<double>> ref);

// Acceptance decisions; boundaries are inclusive on the accept side.
Hypothesis decide(double psi, double gamma, const LlrRule& rule);
Hypothesis decide(double psi, double gamma, const CombinedRule& rule);

// Per-realization acceptance under analytic calibration, for thresholds that
// depend on the trial's own noncentrality: psi <= quantile(1 - pfa; 2N, mu)
// is evaluated as cdf(psi; 2N, mu) <= 1 - pfa, saving the inversion.
bool llr_accepts_analytic(double psi, double mu, std::size_t n_channels, double target_pfa);

// Raised when a threshold search cannot satisfy its false-alarm constraint.
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Joint threshold search for the combined test. Generates a shared pool of
// mc_budget legitimate (psi, gamma) pairs and mc_budget forged pairs under
// `attack`, then for each epsilon on a 40-point geometric grid spanning
// [1e-3, 1e2]*sqrt(N) finds by bisection the theta meeting the false-alarm
// constraint and keeps the couple with the smallest empirical missed
// detection (ties resolved toward the larger epsilon). Throws
// CalibrationError if no couple meets the constraint.
CombinedRule optimize_thresholds(const SystemParams& params, double target_pfa,
                                 const AttackStrategy& attack, std::size_t mc_budget,
                                 StreamFamily streams, int workers = 1);

}  // namespace authsim
