#include "angclust/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "angclust/error.hpp"
#include "angclust/special.hpp"

namespace angclust {

namespace {

void require_t(std::size_t t) {
    if (t < 2) throw DomainError("bounds need t >= 2");
}

double c_constant(double tm1) { return 4.0 * (std::exp(2.0 / std::sqrt(tm1)) - 0.5); }
double alpha_constant(double tm1) { return std::exp(4.0 / std::sqrt(tm1)); }

}  // namespace

void SeparationParams::validate() const {
    if (!(M >= 0.0)) throw DomainError("M must be non-negative");
    if (!(R >= 2.0)) throw DomainError("R must be at least 2");
}

SeparationParams SeparationParams::from_moments(double nu_a, double rho2_a, double nu_ab, double rho2_ab) {
    if (!(rho2_a > 0.0) || !(rho2_ab > 0.0)) throw DomainError("variances must be positive");
    return {std::fabs(nu_a - nu_ab) / std::sqrt(rho2_a + rho2_ab), rho2_a / rho2_ab + rho2_ab / rho2_a};
}

double epsilon_t(std::size_t t) {
    require_t(t);
    const double tt = static_cast<double>(t);
    const double tm1 = tt - 1.0;
    const double c = c_constant(tm1);
    const double root = std::sqrt(c * c - 4.0);
    const double half = 0.5 * tm1;

    // Mean-difference term: t/(2(t-1)) U ~ beta'(1/2, t-1).
    const double p_mean = special::beta_prime_cdf(tt / std::pow(tm1, 1.5), 0.5, tm1);
    // Variance-ratio term: Z ~ beta'((t-1)/2, (t-1)/2) must stay inside the roots of z^2 - c z + 1.
    const double p_var = special::beta_prime_cdf(0.5 * (c + root), half, half) -
                         special::beta_prime_cdf(0.5 * (c - root), half, half);
    return std::clamp(2.0 - p_mean - p_var, 0.0, 1.0);
}

double delta_t(std::size_t t, const SeparationParams& params) {
    require_t(t);
    params.validate();
    const double tt = static_cast<double>(t);
    const double tm1 = tt - 1.0;
    const double alpha = alpha_constant(tm1);

    const double var_band = special::chi2_cdf(tm1 * alpha, tm1) - special::chi2_cdf(tm1 * (2.0 - alpha), tm1);
    const double cut = tt * std::log1p(params.M) * alpha;
    const double p_mean = 1.0 - special::noncentral_chi2_cdf(cut, 1.0, tt * params.M * params.M);
    return std::clamp(1.0 - var_band * var_band * p_mean, 0.0, 1.0);
}

double psi(const SeparationParams& params) {
    params.validate();
    const double m1 = 1.0 + params.M;
    const double r2 = params.R - 2.0;
    return (std::sqrt(r2 * r2 * m1 * m1 + 32.0 * params.R * m1) - r2 * m1) / 8.0;
}

std::size_t t_min(const SeparationParams& params) {
    const double p = psi(params);
    if (p <= 1.0 + 1e-12) throw NoFiniteT("psi <= 1: no finite sample count suffices");
    const double lp = std::log(p);
    return static_cast<std::size_t>(std::ceil(1.0 + 16.0 / (lp * lp)));
}

double angle_pdf(double theta, double p) {
    if (!(theta >= 0.0) || !(theta <= std::numbers::pi)) throw DomainError("angle must lie in [0, pi]");
    if (!(p >= 2.0)) throw DomainError("angle density needs p >= 2");
    const double norm = std::exp(std::lgamma(0.5 * p) - std::lgamma(0.5 * (p - 1.0))) / std::sqrt(std::numbers::pi);
    return norm * std::pow(std::sin(theta), p - 2.0);
}

BoundReport bound_report(std::size_t t, const SeparationParams& params) {
    require_t(t);
    BoundReport r;
    const double tm1 = static_cast<double>(t) - 1.0;
    r.t = t;
    r.eps_t = epsilon_t(t);
    r.delta_t = delta_t(t, params);
    r.psi_ab = psi(params);
    try {
        r.t_min = t_min(params);
    } catch (const NoFiniteT&) {
        r.t_min.reset();
    }
    r.alpha_t = alpha_constant(tm1);
    r.c = c_constant(tm1);
    return r;
}

}  // namespace angclust
