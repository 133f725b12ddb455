#pragma once

#include <cstddef>
#include <cstdint>

#include "authsim/channel.hpp"

namespace authsim {

struct CombinedRule;

// Forgery rule applied to the adversary's setup-phase observations.
//  - llr:      minimum-mean-square estimate of the main channel from both
//              observations; the matched attack against the quadratic test.
//  - exponent: g_n = rho_ae^x * h_ae_hat_n with x in [-1, 1]. x = 1 recovers
//              the llr attack in the single-observation setting, x = -1 the
//              modulus-matching attack.
struct AttackStrategy {
    enum class Kind { llr, exponent };
    Kind kind = Kind::llr;
    double exponent = 1.0;

    static AttackStrategy llr() { return {Kind::llr, 1.0}; }
    static AttackStrategy exponent_attack(double x) { return {Kind::exponent, x}; }
};

// Channel-estimate forgery from both adversary observations:
//   g_n = h_eb_hat_n * C_n + h_ae_hat_n * D_n
// with
//   C_n = (rho_eb w_eb - rho_ab rho_ae) / (w_ae w_eb - rho_ab^2)
//   D_n = (rho_ae w_ae - rho_ab rho_eb) / (w_ae w_eb - rho_ab^2)
//   w_ae = 1 + sigma2_ae / lambda_n,  w_eb = 1 + sigma2_eb / lambda_n.
// Throws std::domain_error naming the carrier index if a denominator is
// singular.
ComplexVector llr_attack(const ComplexVector& h_ae_hat, const ComplexVector& h_eb_hat,
                         const SystemParams& params);

// Scaled forgery g_n = rho_ae^x * h_ae_hat_n. Throws std::domain_error when
// rho_ae = 0 and x < 0 (the scaling would require dividing by zero).
ComplexVector exponent_attack(const ComplexVector& h_ae_hat, double rho_ae, double x);

// Dispatch on the strategy kind.
ComplexVector forge(const AttackStrategy& strategy, const ComplexVector& h_ae_hat,
                    const ComplexVector& h_eb_hat, const SystemParams& params);
void forge_into(std::span<std::complex<double>> out, const AttackStrategy& strategy,
                std::span<const std::complex<double>> h_ae_hat,
                std::span<const std::complex<double>> h_eb_hat, const SystemParams& params);

// Grid search for the exponent maximizing the empirical missed-detection
// probability against a fixed combined rule. The grid spans [-1, 1] in steps
// of grid_step; all grid points are scored on one shared sample pool and ties
// are broken toward x = 1. Forged observations do not depend on the fading
// correlation, so the pool is valid for any alpha; alpha enters only through
// the rule under attack.
double optimize_attack_exponent(const SystemParams& params, const CombinedRule& rule,
                                double grid_step, std::size_t mc_budget, StreamFamily streams,
                                int workers = 1);

}  // namespace authsim
