#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "authsim/detectors.hpp"
#include "authsim/stats.hpp"

using namespace authsim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexVector cv(std::initializer_list<std::complex<double>> xs) { return ComplexVector(xs); }

}  // namespace

TEST_CASE("llr statistic hand values") {
    const std::vector<double> one{1.0};
    CHECK(llr_statistic(cv({{2.0, -1.0}}), cv({{2.0, -1.0}}), one) == 0.0);

    // |obs - ref|^2 = 2 with unit variance: psi = 4.
    CHECK(llr_statistic(cv({{1.0, 1.0}}), cv({{0.0, 0.0}}), one) == doctest::Approx(4.0));

    // diffs (1, 2i) with variances (1, 2): 2 * (1/1 + 4/2) = 6.
    const std::vector<double> two{1.0, 2.0};
    CHECK(llr_statistic(cv({{1.0, 0.0}, {0.0, 2.0}}), cv({{0.0, 0.0}, {0.0, 0.0}}), two) ==
          doctest::Approx(6.0));

    CHECK_THROWS_AS(llr_statistic(cv({{1.0, 0.0}}), cv({{0.0, 0.0}, {0.0, 0.0}}), one),
                    std::invalid_argument);
    const std::vector<double> neg{-1.0};
    CHECK_THROWS_AS(llr_statistic(cv({{1.0, 0.0}}), cv({{0.0, 0.0}}), neg),
                    std::invalid_argument);
}

TEST_CASE("llr statistic is nonnegative and vanishes only on equality") {
    Rng rng(21, 0);
    const std::vector<double> sigma2{0.7, 1.3, 0.4};
    for (int t = 0; t < 500; ++t) {
        ComplexVector a(3), b(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.complex_gaussian(1.0);
            b[i] = rng.complex_gaussian(1.0);
        }
        const double psi = llr_statistic(a, b, sigma2);
        CHECK(psi >= 0.0);
        CHECK((psi == 0.0) == (a == b));
        CHECK(llr_statistic(a, a, sigma2) == 0.0);
    }
}

TEST_CASE("noncentrality hand values and limits") {
    const std::vector<double> s{1.19};
    // Flat fading: the shift vector is identically zero.
    CHECK(noncentrality(cv({{0.0, 0.0}}), cv({{5.0, 1.0}}), s, NoncentralityMode::mu) == 0.0);
    // Perfect forgery: g equals the channel.
    CHECK(noncentrality(cv({{2.0, 1.0}}), cv({{2.0, 1.0}}), s, NoncentralityMode::beta) == 0.0);
    // alpha = 0.9, h = 2: |(alpha - 1) h|^2 / 1.19.
    CHECK(noncentrality(cv({{-0.2, 0.0}}), cv({{2.0, 0.0}}), s, NoncentralityMode::mu) ==
          doctest::Approx(0.04 / 1.19));
    CHECK_THROWS_AS(
        noncentrality(cv({{1.0, 0.0}, {1.0, 0.0}}), cv({{1.0, 0.0}}), s, NoncentralityMode::beta),
        std::invalid_argument);
}

TEST_CASE("analytic threshold matches the closed form and responds to noncentrality") {
    CHECK(calibrate_llr_threshold(1e-4, 0.0, 1) == doctest::Approx(18.4207).epsilon(1e-5));
    const double t0 = calibrate_llr_threshold(1e-4, 0.0, 3);
    CHECK(std::abs(nc_chi2_cdf(t0, NoncentralChi2(6, 0.0)) - (1.0 - 1e-4)) <= 1e-9);
    CHECK(calibrate_llr_threshold(1e-4, 2.5, 3) > t0);
    CHECK(calibrate_llr_threshold(1e-4, 1e-3, 1) > calibrate_llr_threshold(1e-4, 0.0, 1));
}

TEST_CASE("six-dof threshold agrees with a sampling oracle") {
    // 2e6 central chi-square(6) draws: the number exceeding the calibrated
    // threshold is binomial(n, 1e-4); accept within 3 standard deviations.
    const double theta = calibrate_llr_threshold(1e-4, 0.0, 3);
    Rng rng(22, 0);
    const std::size_t n = 2000000;
    std::size_t exceed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = 0; d < 3; ++d) acc += std::norm(rng.complex_gaussian(2.0));
        if (acc > theta) ++exceed;
    }
    const double expect = 1e-4 * static_cast<double>(n);
    CHECK(std::abs(static_cast<double>(exceed) - expect) <= 3.0 * std::sqrt(expect));
}

TEST_CASE("modulus statistic hand values and phase invariance") {
    CHECK(modulus_statistic(cv({{3.0, 4.0}}), cv({{3.0, 4.0}})) == 0.0);
    // |ref| = (2, 3), |obs| = (1, 1): gamma = (2-1) + (3-1) = 3.
    CHECK(modulus_statistic(cv({{1.0, 0.0}, {0.0, 1.0}}), cv({{2.0, 0.0}, {3.0, 0.0}})) ==
          doctest::Approx(3.0));

    Rng rng(23, 0);
    for (int t = 0; t < 300; ++t) {
        ComplexVector obs(2), ref(2), rot_obs(2), rot_ref(2);
        for (int i = 0; i < 2; ++i) {
            obs[i] = rng.complex_gaussian(1.0);
            ref[i] = rng.complex_gaussian(1.0);
            rot_obs[i] = obs[i] * std::polar(1.0, 6.283185 * rng.uniform01());
            rot_ref[i] = ref[i] * std::polar(1.0, 6.283185 * rng.uniform01());
        }
        const double base = modulus_statistic(obs, ref);
        CHECK(modulus_statistic(rot_obs, ref) == doctest::Approx(base).epsilon(1e-12));
        CHECK(modulus_statistic(obs, rot_ref) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("decision boundaries are inclusive and the vacuous gate reduces to the llr rule") {
    const LlrRule llr{10.0, {1.0}};
    const CombinedRule comb{10.0, 2.0, {1.0}};
    CHECK(decide(0.0, 0.0, llr) == Hypothesis::h0);
    CHECK(decide(0.0, 0.0, comb) == Hypothesis::h0);
    CHECK(decide(10.0, 2.0, comb) == Hypothesis::h0);  // both boundaries inclusive
    CHECK(decide(10.0, -2.0, comb) == Hypothesis::h0);
    CHECK(decide(10.0000001, 0.0, comb) == Hypothesis::h1);
    CHECK(decide(5.0, 2.0000001, comb) == Hypothesis::h1);

    const CombinedRule vacuous{10.0, kInf, {1.0}};
    Rng rng(24, 0);
    for (int t = 0; t < 2000; ++t) {
        const double psi = 20.0 * rng.uniform01();
        const double gamma = 40.0 * (rng.uniform01() - 0.5);
        CHECK(decide(psi, gamma, vacuous) == decide(psi, gamma, llr));
    }
}

TEST_CASE("accept region is monotone in both thresholds") {
    Rng rng(25, 0);
    for (int t = 0; t < 2000; ++t) {
        const double psi = 30.0 * rng.uniform01();
        const double gamma = 10.0 * (rng.uniform01() - 0.5);
        const double theta = 25.0 * rng.uniform01() + 1e-6;
        const double eps = 5.0 * rng.uniform01();
        const CombinedRule rule{theta, eps, {1.0}};
        if (decide(psi, gamma, rule) == Hypothesis::h0) {
            const CombinedRule wider_theta{theta * (1.0 + rng.uniform01()), eps, {1.0}};
            const CombinedRule wider_eps{theta, eps + rng.uniform01(), {1.0}};
            CHECK(decide(psi, gamma, wider_theta) == Hypothesis::h0);
            CHECK(decide(psi, gamma, wider_eps) == Hypothesis::h0);
        }
    }
}

TEST_CASE("per-realization analytic acceptance matches the explicit quantile") {
    Rng rng(26, 0);
    for (int t = 0; t < 60; ++t) {
        const double mu = 3.0 * rng.uniform01();
        const double psi = 30.0 * rng.uniform01();
        const double theta = calibrate_llr_threshold(1e-3, mu, 2);
        CHECK(llr_accepts_analytic(psi, mu, 2, 1e-3) == (psi <= theta));
    }
}

namespace {

// Empirical false-alarm rate of the analytically calibrated test over
// legitimate trials, exercising the per-realization noncentrality when the
// fading correlation is below one.
double empirical_fa(const SystemParams& p, double target, std::size_t trials,
                    std::uint64_t seed) {
    const auto sigma2 = per_channel_sigma2(p);
    const bool flat =
        std::all_of(p.alpha.begin(), p.alpha.end(), [](double a) { return a == 1.0; });
    const double theta0 = flat ? calibrate_llr_threshold(target, 0.0, p.n_channels) : 0.0;
    std::size_t fa = 0;
    ComplexVector h(p.n_channels), ref(p.n_channels), obs(p.n_channels);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        draw_channel_into(h, p, rng);
        setup_estimate_into(ref, h, p, rng);
        legit_observation_into(obs, h, p, rng);
        const double psi = llr_statistic(obs, ref, sigma2);
        bool accepted;
        if (flat) {
            accepted = psi <= theta0;
        } else {
            double mu = 0.0;
            for (std::size_t i = 0; i < p.n_channels; ++i)
                mu += std::norm((p.alpha[i] - 1.0) * h[i]) / sigma2[i];
            accepted = llr_accepts_analytic(psi, mu, p.n_channels, target);
        }
        if (!accepted) ++fa;
    }
    return static_cast<double>(fa) / static_cast<double>(trials);
}

}  // namespace

TEST_CASE("calibration soundness at a reduced trial budget") {
    // Flat fading, target 1e-4, 1e6 trials: the empirical rate must stay in
    // [0.5e-4, 2e-4]. The full 1e7-trial version runs in the acceptance
    // suite.
    for (std::size_t n : {std::size_t{1}, std::size_t{3}}) {
        SystemParams p = SystemParams::uniform(n, 1.0, std::pow(10.0, -1.5), 0.01, 0.1);
        const double fa = empirical_fa(p, 1e-4, 1000000, 300 + n);
        CHECK(fa >= 0.5e-4);
        CHECK(fa <= 2e-4);
    }
    // Fading case with the per-realization noncentrality.
    SystemParams p = SystemParams::uniform(3, 0.9, std::pow(10.0, -1.5), 0.01, 0.1);
    const double fa = empirical_fa(p, 1e-4, 1000000, 305);
    CHECK(fa >= 0.5e-4);
    CHECK(fa <= 2e-4);
}

TEST_CASE("threshold search satisfies the false-alarm constraint on fresh samples") {
    SystemParams p = SystemParams::uniform(2, 0.9, std::pow(10.0, -1.5), 0.01, 0.1);
    const double target = 1e-3;
    const std::size_t budget = 200000;
    const CombinedRule rule = optimize_thresholds(p, target, AttackStrategy::exponent_attack(1.0),
                                                  budget, {401, 0});
    CHECK(rule.epsilon > 0.0);
    CHECK(rule.theta > 0.0);

    // Fresh validation pool.
    const auto sigma2 = per_channel_sigma2(p);
    std::size_t fa = 0;
    const std::size_t fresh = 400000;
    ComplexVector h(2), ref(2), obs(2);
    for (std::size_t t = 0; t < fresh; ++t) {
        Rng rng(402, t);
        draw_channel_into(h, p, rng);
        setup_estimate_into(ref, h, p, rng);
        legit_observation_into(obs, h, p, rng);
        if (decide(llr_statistic(obs, ref, sigma2), modulus_statistic(obs, ref), rule) ==
            Hypothesis::h1)
            ++fa;
    }
    const double fa_rate = static_cast<double>(fa) / static_cast<double>(fresh);
    const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(fresh));
    CHECK(std::abs(fa_rate - target) <= 3.0 * se);
}

TEST_CASE("the optimized couple beats the pure-llr rule on shared pools") {
    // The vacuous-gate rule is in the search family, so the optimum cannot
    // be worse than the pure quadratic rule evaluated on the same pools.
    SystemParams p = SystemParams::uniform(2, 1.0, std::pow(10.0, -1.5), 0.01, 0.3);
    const double target = 1e-3;
    const std::size_t budget = 200000;
    const AttackStrategy attack = AttackStrategy::exponent_attack(1.0);
    const StreamFamily streams{403, 0};
    const CombinedRule rule = optimize_thresholds(p, target, attack, budget, streams);

    // Rebuild the same pools the optimizer used (same streams) and compare.
    const auto sigma2 = per_channel_sigma2(p);
    std::vector<double> psi_h0;
    psi_h0.reserve(budget);
    std::uint64_t md_comb = 0, md_llr = 0;
    ComplexVector h(2), ref(2), ae(2), eb(2), g(2), obs(2);
    for (std::size_t t = 0; t < budget; ++t) {
        Rng rng = streams.at(t);
        draw_channel_into(h, p, rng);
        setup_estimate_into(ref, h, p, rng);
        legit_observation_into(obs, h, p, rng);
        psi_h0.push_back(llr_statistic(obs, ref, sigma2));
    }
    std::sort(psi_h0.begin(), psi_h0.end());
    const auto want =
        static_cast<std::size_t>(std::ceil((1.0 - target) * static_cast<double>(budget)));
    const double theta_pure = psi_h0[want - 1];

    const StreamFamily h1 = streams.sub(std::uint64_t{1} << 38);
    for (std::size_t t = 0; t < budget; ++t) {
        Rng rng = h1.at(t);
        draw_channel_into(h, p, rng);
        setup_estimate_into(ref, h, p, rng);
        eve_observations_into(ae, eb, h, p, rng);
        forge_into(g, attack, ae, eb, p);
        for (int i = 0; i < 2; ++i) obs[i] = g[i] + rng.complex_gaussian(p.sigma2_ii);
        const double psi = llr_statistic(obs, ref, sigma2);
        const double gamma = modulus_statistic(obs, ref);
        if (decide(psi, gamma, rule) == Hypothesis::h0) ++md_comb;
        if (psi <= theta_pure) ++md_llr;
    }
    CHECK(md_comb <= md_llr);
}

TEST_CASE("degenerate noiseless flat fading collapses the statistics") {
    SystemParams p = SystemParams::uniform(1, 1.0, 0.0, 0.0, 0.1);
    const CombinedRule rule =
        optimize_thresholds(p, 1e-3, AttackStrategy::exponent_attack(0.0), 200000, {404, 0});
    CHECK(rule.theta == 0.0);  // legitimate statistics degenerate to (0, 0)

    ComplexVector h(1), ref(1), obs(1);
    Rng rng(405, 0);
    draw_channel_into(h, p, rng);
    setup_estimate_into(ref, h, p, rng);
    legit_observation_into(obs, h, p, rng);
    CHECK(llr_statistic(obs, ref, per_channel_sigma2(p)) == 0.0);
}

TEST_CASE("threshold search fails explicitly when the gate cannot meet the target") {
    // A huge power profile spreads the modulus statistic far beyond the
    // epsilon grid, so no couple reaches the false-alarm constraint.
    SystemParams p = SystemParams::uniform(1, 0.0, 0.0, 0.0, 0.1);
    p.lambda.assign(1, 1e7);
    CHECK_THROWS_AS(optimize_thresholds(p, 1e-3, AttackStrategy::exponent_attack(1.0), 200000,
                                        StreamFamily{406, 0}),
                    CalibrationError);
    CHECK_THROWS_AS(optimize_thresholds(p, 1e-4, AttackStrategy::exponent_attack(1.0), 1000,
                                        StreamFamily{406, 0}),
                    std::invalid_argument);
}
