#include "authsim/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "authsim/detectors.hpp"
#include "authsim/parallel.hpp"

namespace authsim {

namespace {

void check_pair_lengths(std::size_t a, std::size_t b, std::size_t n, const char* who) {
    if (a != n || b != n) throw std::invalid_argument(std::string(who) + ": length mismatch");
}

}  // namespace

void forge_into(std::span<std::complex<double>> out, const AttackStrategy& strategy,
                std::span<const std::complex<double>> h_ae_hat,
                std::span<const std::complex<double>> h_eb_hat, const SystemParams& params) {
    const std::size_t n = params.n_channels;
    switch (strategy.kind) {
        case AttackStrategy::Kind::llr: {
            check_pair_lengths(h_ae_hat.size(), h_eb_hat.size(), n, "llr_attack");
            for (std::size_t i = 0; i < n; ++i) {
                if (!(params.lambda[i] > 0.0))
                    throw std::domain_error("llr_attack: lambda must be positive on channel " +
                                            std::to_string(i));
                const double w_ae = 1.0 + params.sigma2_ae / params.lambda[i];
                const double w_eb = 1.0 + params.sigma2_eb / params.lambda[i];
                const double denom = w_ae * w_eb - params.rho_ab * params.rho_ab;
                if (denom == 0.0)
                    throw std::domain_error("llr_attack: singular denominator on channel " +
                                            std::to_string(i));
                const double c = (params.rho_eb * w_eb - params.rho_ab * params.rho_ae) / denom;
                const double d = (params.rho_ae * w_ae - params.rho_ab * params.rho_eb) / denom;
                out[i] = h_eb_hat[i] * c + h_ae_hat[i] * d;
            }
            return;
        }
        case AttackStrategy::Kind::exponent: {
            const double x = strategy.exponent;
            if (!(x >= -1.0 && x <= 1.0))
                throw std::invalid_argument("exponent_attack: x must lie in [-1, 1]");
            if (params.rho_ae == 0.0 && x < 0.0)
                throw std::domain_error(
                    "exponent_attack: rho_ae = 0 admits no inverse scaling (x < 0)");
            const double scale = std::pow(params.rho_ae, x);
            for (std::size_t i = 0; i < h_ae_hat.size(); ++i) out[i] = scale * h_ae_hat[i];
            return;
        }
    }
    throw std::logic_error("forge: unknown attack kind");
}

ComplexVector llr_attack(const ComplexVector& h_ae_hat, const ComplexVector& h_eb_hat,
                         const SystemParams& params) {
    ComplexVector g(params.n_channels);
    forge_into(g, AttackStrategy::llr(), h_ae_hat, h_eb_hat, params);
    return g;
}

ComplexVector exponent_attack(const ComplexVector& h_ae_hat, double rho_ae, double x) {
    SystemParams p;
    p.n_channels = h_ae_hat.size();
    p.alpha.assign(p.n_channels, 1.0);
    p.lambda.assign(p.n_channels, 1.0);
    p.rho_ae = rho_ae;
    ComplexVector g(h_ae_hat.size());
    forge_into(g, AttackStrategy::exponent_attack(x), h_ae_hat, {}, p);
    return g;
}

ComplexVector forge(const AttackStrategy& strategy, const ComplexVector& h_ae_hat,
                    const ComplexVector& h_eb_hat, const SystemParams& params) {
    ComplexVector g(params.n_channels);
    forge_into(g, strategy, h_ae_hat, h_eb_hat, params);
    return g;
}

double optimize_attack_exponent(const SystemParams& params, const CombinedRule& rule,
                                double grid_step, std::size_t mc_budget, StreamFamily streams,
                                int workers) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("optimize_attack_exponent: bad grid step");
    const double steps_exact = 2.0 / grid_step;
    const long steps = std::lround(steps_exact);
    if (std::abs(steps_exact - static_cast<double>(steps)) > 1e-9)
        throw std::invalid_argument("optimize_attack_exponent: grid_step must divide 2 evenly");
    if (mc_budget == 0) throw std::invalid_argument("optimize_attack_exponent: empty budget");
    if (!(params.rho_ae > 0.0))
        throw std::domain_error("optimize_attack_exponent: rho_ae must be positive");

    const std::size_t n = params.n_channels;

    // One shared pool of forgery-phase draws; every grid point is scored on
    // the same realizations so the argmax is not blurred by sampling noise.
    std::vector<std::complex<double>> ref(mc_budget * n);       // verifier reference
    std::vector<std::complex<double>> ae(mc_budget * n);        // adversary observation
    std::vector<std::complex<double>> obs_noise(mc_budget * n); // authentication-phase noise
    std::vector<double> ref_mod(mc_budget * n);

    parallel_for_chunks(mc_budget, workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<std::complex<double>> h(n), eb(n);
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng = streams.at(t);
            draw_channel_into(h, params, rng);
            setup_estimate_into({ref.data() + t * n, n}, h, params, rng);
            eve_observations_into({ae.data() + t * n, n}, eb, h, params, rng);
            for (std::size_t i = 0; i < n; ++i) {
                obs_noise[t * n + i] = rng.complex_gaussian(params.sigma2_ii);
                ref_mod[t * n + i] = std::abs(ref[t * n + i]);
            }
        }
    });

    std::vector<std::uint64_t> hits(static_cast<std::size_t>(steps) + 1, 0);
    parallel_for_chunks(hits.size(), workers, [&](std::size_t s0, std::size_t s1, unsigned) {
        for (std::size_t s = s0; s < s1; ++s) {
            const double x = -1.0 + grid_step * static_cast<double>(s);
            const double scale = std::pow(params.rho_ae, x);
            std::uint64_t count = 0;
            for (std::size_t t = 0; t < mc_budget; ++t) {
                double psi = 0.0, gamma = 0.0;
                const std::size_t off = t * n;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::complex<double> seen = scale * ae[off + i] + obs_noise[off + i];
                    const std::complex<double> diff = seen - ref[off + i];
                    psi += std::norm(diff) / rule.sigma2[i];
                    gamma += ref_mod[off + i] - std::abs(seen);
                }
                psi *= 2.0;
                if (decide(psi, gamma, rule) == Hypothesis::h0) ++count;
            }
            hits[s] = count;
        }
    });

    double best_x = -1.0;
    std::uint64_t best_hits = 0;
    for (std::size_t s = 0; s < hits.size(); ++s) {
        if (s == 0 || hits[s] >= best_hits) {  // >= breaks ties toward x = 1
            best_hits = hits[s];
            best_x = -1.0 + grid_step * static_cast<double>(s);
        }
    }
    return best_x;
}

}  // namespace authsim
