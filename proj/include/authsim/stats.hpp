#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "authsim/rng.hpp"

namespace authsim {

// Noncentral chi-square law with `dof` degrees of freedom and noncentrality
// `lambda`; the distribution of a sum of dof squared unit-variance Gaussians
// whose means have squared norm lambda. lambda = 0 gives the central law.
struct NoncentralChi2 {
    int dof;
    double lambda;

    NoncentralChi2(int dof_, double lambda_);
};

// CDF evaluated as a Poisson(lambda/2) mixture of central chi-square CDFs,
// summed outward from the modal term so large noncentralities stay in range.
// Absolute error <= 1e-10 (mixture truncated once the unaccounted Poisson
// mass drops below 1e-14). Returns 0 for x <= 0.
double nc_chi2_cdf(double x, const NoncentralChi2& dist);

// Inverse CDF by bracketed bisection; |nc_chi2_cdf(result) - p| <= 1e-9.
// Throws std::domain_error unless 0 < p < 1.
double nc_chi2_quantile(double p, const NoncentralChi2& dist);

// Regularized lower incomplete gamma P(a, x); series for x < a+1, Lentz
// continued fraction otherwise.
double gamma_p(double a, double x);

// n i.i.d. circularly symmetric complex Gaussian entries with per-entry
// total variance `variance`. Throws std::invalid_argument on bad arguments.
std::vector<std::complex<double>> sample_complex_gaussian(std::size_t n, double variance,
                                                          Rng& stream);

// Wilson-score 95% confidence interval for a binomial proportion.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

}  // namespace authsim
