#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "authsim/rng.hpp"

namespace authsim {

using ComplexVector = std::vector<std::complex<double>>;

enum class Hypothesis { h0, h1 };

// Full scenario parameterization of the two-phase authentication link:
// N parallel sub-carriers, per-carrier time correlation alpha, setup and
// observation noise variances, the adversary's spatial correlations and
// estimation noise, and the per-carrier power profile.
struct SystemParams {
    std::size_t n_channels = 1;
    std::vector<double> alpha;    // time correlation per sub-carrier, in [0, 1]
    double sigma2_i = 0.0;        // setup-phase estimation noise variance
    double sigma2_ii = 0.0;       // observation-phase noise variance
    double rho_ae = 0.0;          // spatial correlation, peer-to-adversary channel
    double rho_eb = 0.0;          // spatial correlation, adversary-to-verifier channel
    double rho_ab = 0.0;          // cross-correlation between the adversary's two estimates
    double sigma2_ae = 0.0;       // adversary estimation noise (peer side)
    double sigma2_eb = 0.0;       // adversary estimation noise (verifier side)
    std::vector<double> lambda;   // per-carrier power profile, > 0

    // Uniform profile helper: alpha_n = alpha, lambda_n = 1 for all carriers.
    static SystemParams uniform(std::size_t n, double alpha, double sigma2_i, double sigma2_ii,
                                double rho_ae);

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    // SNR definitions used throughout: SNR = 1 / noise variance.
    double snr_setup() const { return 1.0 / sigma2_i; }
    double snr_observation() const { return 1.0 / sigma2_ii; }
};

// One Monte Carlo draw of the full scenario state: the true channel, the
// verifier's setup reference, the adversary's paired observations, and one
// authentication-phase observation generated under `truth`.
struct TrialSample {
    ComplexVector h_ab;
    ComplexVector h_ab_hat;
    ComplexVector h_ae_hat;
    ComplexVector h_eb_hat;
    ComplexVector observation;
    Hypothesis truth = Hypothesis::h0;
};

// True peer-to-verifier channel: independent entries, entry n circularly
// symmetric complex Gaussian with variance lambda[n].
ComplexVector draw_channel(const SystemParams& params, Rng& stream);

// Setup-phase reference estimate: h_ab plus white complex noise of variance
// sigma2_i per entry.
ComplexVector setup_estimate(const ComplexVector& h_ab, const SystemParams& params, Rng& stream);

// Legitimate authentication-phase observation:
//   alpha .* h_ab + sqrt(1 - alpha^2) .* w_f + w_ii
// with w_f a fresh unit-variance complex Gaussian fading innovation (Rayleigh
// magnitude) and w_ii observation noise. Rejects alpha entries outside [0, 1].
ComplexVector legit_observation(const ComplexVector& h_ab, const SystemParams& params,
                                Rng& stream);

// The adversary's two setup-phase observations. Both share a single decoy
// component r ~ CN(0, diag(lambda)) drawn once per call:
//   h_ae_hat = rho_ae h_ab + sqrt(1 - rho_ae^2) r + w_ae
//   h_eb_hat = rho_eb h_ab + sqrt(1 - rho_eb^2) r + w_eb
std::pair<ComplexVector, ComplexVector> eve_observations(const ComplexVector& h_ab,
                                                         const SystemParams& params, Rng& stream);

// In-place variants used by the Monte Carlo hot paths; outputs must already
// have size n_channels.
void draw_channel_into(std::span<std::complex<double>> out, const SystemParams& params,
                       Rng& stream);
void setup_estimate_into(std::span<std::complex<double>> out,
                         std::span<const std::complex<double>> h_ab, const SystemParams& params,
                         Rng& stream);
void legit_observation_into(std::span<std::complex<double>> out,
                            std::span<const std::complex<double>> h_ab,
                            const SystemParams& params, Rng& stream);
void eve_observations_into(std::span<std::complex<double>> ae, std::span<std::complex<double>> eb,
                           std::span<const std::complex<double>> h_ab, const SystemParams& params,
                           Rng& stream);

}  // namespace authsim
