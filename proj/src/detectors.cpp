#include "authsim/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "authsim/parallel.hpp"
#include "authsim/stats.hpp"

namespace authsim {

std::vector<double> per_channel_sigma2(const SystemParams& params, bool assume_flat) {
    std::vector<double> out(params.n_channels);
    for (std::size_t n = 0; n < params.n_channels; ++n) {
        const double a = assume_flat ? 1.0 : params.alpha[n];
        out[n] = params.sigma2_i + params.sigma2_ii + 1.0 - a * a;
    }
    return out;
}

double llr_statistic(std::span<const std::complex<double>> obs,
                     std::span<const std::complex<double>> ref, std::span<const double> sigma2) {
    if (obs.size() != ref.size() || obs.size() != sigma2.size())
        throw std::invalid_argument("llr_statistic: length mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < obs.size(); ++n) {
        if (!(sigma2[n] >= 0.0))
            throw std::invalid_argument("llr_statistic: sigma2 entries must be >= 0");
        const double sq = std::norm(obs[n] - ref[n]);
        if (sq == 0.0) continue;  // exact match contributes nothing, even in
                                  // the degenerate noiseless flat-fading case
        if (sigma2[n] == 0.0) return std::numeric_limits<double>::infinity();
        acc += sq / sigma2[n];
    }
    return 2.0 * acc;
}

double noncentrality(std::span<const std::complex<double>> v,
                     std::span<const std::complex<double>> ref_channel,
                     std::span<const double> sigma2, NoncentralityMode mode) {
    if (v.size() != sigma2.size() ||
        (mode == NoncentralityMode::beta && v.size() != ref_channel.size()))
        throw std::invalid_argument("noncentrality: length mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) {
        const std::complex<double> num =
            mode == NoncentralityMode::mu ? v[n] : v[n] - ref_channel[n];
        acc += std::norm(num) / sigma2[n];
    }
    return acc;
}

double calibrate_llr_threshold(double target_pfa, double mu, std::size_t n_channels) {
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw std::domain_error("calibrate_llr_threshold: target_pfa must lie in (0, 1)");
    return nc_chi2_quantile(1.0 - target_pfa,
                            NoncentralChi2(static_cast<int>(2 * n_channels), mu));
}

double modulus_statistic(std::span<const std::complex<double>> obs,
                         std::span<const std::complex<double>> ref) {
    if (obs.size() != ref.size()) throw std::invalid_argument("modulus_statistic: length mismatch");
    double acc = 0.0;
    for (std::size_t n = 0; n < obs.size(); ++n) acc += std::abs(ref[n]) - std::abs(obs[n]);
    return acc;
}

Hypothesis decide(double psi, double gamma, const LlrRule& rule) {
    (void)gamma;
    return psi <= rule.theta ? Hypothesis::h0 : Hypothesis::h1;
}

Hypothesis decide(double psi, double gamma, const CombinedRule& rule) {
    const bool accept = psi <= rule.theta && gamma >= -rule.epsilon && gamma <= rule.epsilon;
    return accept ? Hypothesis::h0 : Hypothesis::h1;
}

bool llr_accepts_analytic(double psi, double mu, std::size_t n_channels, double target_pfa) {
    // psi <= F^{-1}(1 - pfa) iff F(psi) <= 1 - pfa; the CDF is monotone.
    return nc_chi2_cdf(psi, NoncentralChi2(static_cast<int>(2 * n_channels), mu)) <=
           1.0 - target_pfa;
}

namespace {

constexpr std::uint64_t kPoolStride = 1ull << 38;  // stream offset of the forged pool

struct StatPair {
    double psi;
    double gamma;
};

// Draws mc_budget (psi, gamma) pairs under the requested hypothesis. Each
// trial owns one counter stream, so the pool is independent of the worker
// split.
std::vector<StatPair> draw_stat_pool(const SystemParams& params, const AttackStrategy* attack,
                                     std::size_t mc_budget, StreamFamily streams, int workers) {
    const std::size_t n = params.n_channels;
    const std::vector<double> sigma2 = per_channel_sigma2(params);
    std::vector<StatPair> pool(mc_budget);
    parallel_for_chunks(mc_budget, workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<std::complex<double>> h(n), ref(n), ae(n), eb(n), g(n), obs(n);
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng = streams.at(t);
            draw_channel_into(h, params, rng);
            setup_estimate_into(ref, h, params, rng);
            if (attack != nullptr) {
                eve_observations_into(ae, eb, h, params, rng);
                forge_into(g, *attack, ae, eb, params);
                for (std::size_t i = 0; i < n; ++i)
                    obs[i] = g[i] + rng.complex_gaussian(params.sigma2_ii);
            } else {
                legit_observation_into(obs, h, params, rng);
            }
            pool[t] = {llr_statistic(obs, ref, sigma2), modulus_statistic(obs, ref)};
        }
    });
    return pool;
}

}  // namespace

CombinedRule optimize_thresholds(const SystemParams& params, double target_pfa,
                                 const AttackStrategy& attack, std::size_t mc_budget,
                                 StreamFamily streams, int workers) {
    params.validate();
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw std::domain_error("optimize_thresholds: target_pfa must lie in (0, 1)");
    if (static_cast<double>(mc_budget) * target_pfa < 100.0)
        throw std::invalid_argument(
            "optimize_thresholds: mc_budget too small for the false-alarm target "
            "(need target_pfa * mc_budget >= 100)");

    const std::vector<StatPair> h0 =
        draw_stat_pool(params, nullptr, mc_budget, streams, workers);
    const std::vector<StatPair> h1 =
        draw_stat_pool(params, &attack, mc_budget, streams.sub(kPoolStride), workers);

    // Accepted-count target on the legitimate pool.
    const std::size_t want_accepted = static_cast<std::size_t>(
        std::ceil((1.0 - target_pfa) * static_cast<double>(mc_budget)));

    const double root_n = std::sqrt(static_cast<double>(params.n_channels));
    constexpr int kGridPoints = 40;
    const double eps_lo = 1e-3 * root_n;
    const double eps_hi = 1e2 * root_n;
    const double ratio = std::pow(eps_hi / eps_lo, 1.0 / (kGridPoints - 1));

    bool found = false;
    CombinedRule best;
    best.sigma2 = per_channel_sigma2(params);
    std::uint64_t best_md = 0;

    std::vector<double> psi_subset;
    psi_subset.reserve(mc_budget);
    double eps = eps_lo;
    for (int gi = 0; gi < kGridPoints; ++gi, eps *= ratio) {
        psi_subset.clear();
        for (const StatPair& s : h0)
            if (s.gamma >= -eps && s.gamma <= eps) psi_subset.push_back(s.psi);
        if (psi_subset.size() < want_accepted) continue;  // modulus gate alone busts the budget

        // Bisection limit on theta: the rank statistic that leaves exactly
        // want_accepted pool members inside the acceptance region.
        std::nth_element(psi_subset.begin(), psi_subset.begin() + (want_accepted - 1),
                         psi_subset.end());
        const double theta = psi_subset[want_accepted - 1];

        std::uint64_t md = 0;
        for (const StatPair& s : h1)
            if (s.psi <= theta && s.gamma >= -eps && s.gamma <= eps) ++md;

        // Strict "<=" keeps ties on the larger epsilon, the laxer modulus gate.
        if (!found || md <= best_md) {
            found = true;
            best_md = md;
            best.theta = theta;
            best.epsilon = eps;
        }
    }

    if (!found)
        throw CalibrationError(
            "optimize_thresholds: no (theta, epsilon) couple meets the false-alarm target " +
            std::to_string(target_pfa) + " within a budget of " + std::to_string(mc_budget));
    return best;
}

}  // namespace authsim
