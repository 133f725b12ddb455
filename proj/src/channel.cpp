#include "authsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace authsim {

namespace {

void require(bool cond, const std::string& field, const std::string& what) {
    if (!cond) throw std::invalid_argument("SystemParams: " + field + " " + what);
}

void check_unit_interval(double v, const std::string& field) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, "must lie in [0, 1]");
}

void check_variance(double v, const std::string& field) {
    require(std::isfinite(v) && v >= 0.0, field, "must be finite and >= 0");
}

}  // namespace

SystemParams SystemParams::uniform(std::size_t n, double alpha, double sigma2_i, double sigma2_ii,
                                   double rho_ae) {
    SystemParams p;
    p.n_channels = n;
    p.alpha.assign(n, alpha);
    p.lambda.assign(n, 1.0);
    p.sigma2_i = sigma2_i;
    p.sigma2_ii = sigma2_ii;
    p.rho_ae = rho_ae;
    p.validate();
    return p;
}

void SystemParams::validate() const {
    require(n_channels >= 1, "n_channels", "must be >= 1");
    require(alpha.size() == n_channels, "alpha", "length must equal n_channels");
    require(lambda.size() == n_channels, "lambda", "length must equal n_channels");
    for (double a : alpha) check_unit_interval(a, "alpha");
    for (double l : lambda)
        require(std::isfinite(l) && l >= 0.0, "lambda", "entries must be finite and >= 0");
    check_variance(sigma2_i, "sigma2_i");
    check_variance(sigma2_ii, "sigma2_ii");
    check_variance(sigma2_ae, "sigma2_ae");
    check_variance(sigma2_eb, "sigma2_eb");
    check_unit_interval(rho_ae, "rho_ae");
    check_unit_interval(rho_eb, "rho_eb");
    check_unit_interval(rho_ab, "rho_ab");
}

void draw_channel_into(std::span<std::complex<double>> out, const SystemParams& params,
                       Rng& stream) {
    for (std::size_t n = 0; n < params.n_channels; ++n)
        out[n] = stream.complex_gaussian(params.lambda[n]);
}

void setup_estimate_into(std::span<std::complex<double>> out,
                         std::span<const std::complex<double>> h_ab, const SystemParams& params,
                         Rng& stream) {
    for (std::size_t n = 0; n < params.n_channels; ++n)
        out[n] = h_ab[n] + stream.complex_gaussian(params.sigma2_i);
}

void legit_observation_into(std::span<std::complex<double>> out,
                            std::span<const std::complex<double>> h_ab,
                            const SystemParams& params, Rng& stream) {
    for (std::size_t n = 0; n < params.n_channels; ++n) {
        const double a = params.alpha[n];
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument("legit_observation: alpha outside [0, 1]");
        // Fading innovation has unit complex variance so that the residual
        // per-carrier variance is exactly 1 - alpha^2.
        const std::complex<double> fade = stream.complex_gaussian(1.0);
        out[n] = a * h_ab[n] + std::sqrt(1.0 - a * a) * fade +
                 stream.complex_gaussian(params.sigma2_ii);
    }
}

void eve_observations_into(std::span<std::complex<double>> ae, std::span<std::complex<double>> eb,
                           std::span<const std::complex<double>> h_ab, const SystemParams& params,
                           Rng& stream) {
    const double spread_ae = std::sqrt(1.0 - params.rho_ae * params.rho_ae);
    const double spread_eb = std::sqrt(1.0 - params.rho_eb * params.rho_eb);
    for (std::size_t n = 0; n < params.n_channels; ++n) {
        // One decoy component per carrier, shared by both observations.
        const std::complex<double> r = stream.complex_gaussian(params.lambda[n]);
        ae[n] = params.rho_ae * h_ab[n] + spread_ae * r + stream.complex_gaussian(params.sigma2_ae);
        eb[n] = params.rho_eb * h_ab[n] + spread_eb * r + stream.complex_gaussian(params.sigma2_eb);
    }
}

ComplexVector draw_channel(const SystemParams& params, Rng& stream) {
    params.validate();
    ComplexVector out(params.n_channels);
    draw_channel_into(out, params, stream);
    return out;
}

ComplexVector setup_estimate(const ComplexVector& h_ab, const SystemParams& params, Rng& stream) {
    if (h_ab.size() != params.n_channels)
        throw std::invalid_argument("setup_estimate: channel length mismatch");
    ComplexVector out(params.n_channels);
    setup_estimate_into(out, h_ab, params, stream);
    return out;
}

ComplexVector legit_observation(const ComplexVector& h_ab, const SystemParams& params,
                                Rng& stream) {
    if (h_ab.size() != params.n_channels)
        throw std::invalid_argument("legit_observation: channel length mismatch");
    ComplexVector out(params.n_channels);
    legit_observation_into(out, h_ab, params, stream);
    return out;
}

std::pair<ComplexVector, ComplexVector> eve_observations(const ComplexVector& h_ab,
                                                         const SystemParams& params, Rng& stream) {
    if (h_ab.size() != params.n_channels)
        throw std::invalid_argument("eve_observations: channel length mismatch");
    ComplexVector ae(params.n_channels);
    ComplexVector eb(params.n_channels);
    eve_observations_into(ae, eb, h_ab, params, stream);
    return {std::move(ae), std::move(eb)};
}

}  // namespace authsim
