#include "authsim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace authsim {

NoncentralChi2::NoncentralChi2(int dof_, double lambda_) : dof(dof_), lambda(lambda_) {
    if (dof < 1) throw std::invalid_argument("NoncentralChi2: dof must be >= 1");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("NoncentralChi2: lambda must be finite and >= 0");
}

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {
        // Series expansion around 0.
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // Lentz continued fraction for the upper tail Q(a, x).
    double b = x + 1.0 - a;
    double c = 1.0 / 1e-300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double nc_chi2_cdf(double x, const NoncentralChi2& dist) {
    if (!std::isfinite(x)) throw std::invalid_argument("nc_chi2_cdf: x must be finite");
    if (x <= 0.0) return 0.0;

    const double half_dof = 0.5 * static_cast<double>(dist.dof);
    const double y = 0.5 * x;
    const double hl = 0.5 * dist.lambda;
    if (hl == 0.0) return gamma_p(half_dof, y);

    // Start at the modal Poisson index and expand in both directions.
    // F_j = P(half_dof + j, y); going down F_{j-1} = F_j + delta_{j-1},
    // going up F_{j+1} = F_j - delta_j, with delta_j = y^(a+j) e^-y / G(a+j+1).
    const long mode = static_cast<long>(hl);
    const double log_w_mode =
        -hl + static_cast<double>(mode) * std::log(hl) - std::lgamma(static_cast<double>(mode) + 1.0);
    const double w_mode = std::exp(log_w_mode);
    const double f_mode = gamma_p(half_dof + static_cast<double>(mode), y);
    const double log_delta_mode = (half_dof + static_cast<double>(mode)) * std::log(y) - y -
                                  std::lgamma(half_dof + static_cast<double>(mode) + 1.0);
    const double delta_mode = std::exp(log_delta_mode);

    double sum = w_mode * f_mode;
    double weight_acc = w_mode;

    // Downward sweep (j = mode-1 .. 0).
    {
        double w = w_mode;
        double f = f_mode;
        double delta = delta_mode;
        for (long j = mode; j-- > 0;) {
            w *= static_cast<double>(j + 1) / hl;
            delta *= (half_dof + static_cast<double>(j + 1)) / y;
            f += delta;
            if (f > 1.0) f = 1.0;
            sum += w * f;
            weight_acc += w;
            if (weight_acc >= 1.0 - 1e-14) break;
        }
    }
    // Upward sweep (j = mode+1, ...).
    {
        double w = w_mode;
        double f = f_mode;
        double delta = delta_mode;
        for (long j = mode + 1; weight_acc < 1.0 - 1e-14 && j < mode + 100000; ++j) {
            w *= hl / static_cast<double>(j);
            f -= delta;
            if (f < 0.0) f = 0.0;
            delta *= y / (half_dof + static_cast<double>(j));
            sum += w * f;
            weight_acc += w;
            if (f == 0.0 && w < 1e-16) break;
        }
    }

    if (sum < 0.0) return 0.0;
    if (sum > 1.0) return 1.0;
    return sum;
}

double nc_chi2_quantile(double p, const NoncentralChi2& dist) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("nc_chi2_quantile: p must lie strictly inside (0, 1)");

    const double dof = static_cast<double>(dist.dof);
    double lo = 0.0;
    double hi = dof + dist.lambda + 20.0 * std::sqrt(2.0 * dof + 4.0 * dist.lambda) + 50.0;
    for (int i = 0; i < 60 && nc_chi2_cdf(hi, dist) < p; ++i) hi *= 2.0;

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (nc_chi2_cdf(mid, dist) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::complex<double>> sample_complex_gaussian(std::size_t n, double variance,
                                                          Rng& stream) {
    if (n < 1) throw std::invalid_argument("sample_complex_gaussian: n must be >= 1");
    if (!std::isfinite(variance) || variance < 0.0)
        throw std::invalid_argument("sample_complex_gaussian: variance must be finite and >= 0");
    std::vector<std::complex<double>> out(n);
    stream.fill_complex_gaussian(out, variance);
    return out;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double lo = (center - spread) / denom;
    double hi = (center + spread) / denom;
    if (lo < 0.0 || successes == 0) lo = 0.0;
    if (hi > 1.0 || successes == trials) hi = 1.0;
    return {lo, hi};
}

}  // namespace authsim
