#pragma once

#include <cstddef>
#include <optional>

namespace angclust {

/// Separation of a within-subspace angle law N(nu_a, rho_a^2) from the cross-subspace
/// law N(nu_ab, rho_ab^2), reduced to two dimensionless ratios.
struct SeparationParams {
    double M = 0.0;  ///< |nu_a - nu_ab| / sqrt(rho_a^2 + rho_ab^2), >= 0
    double R = 2.0;  ///< rho_a^2/rho_ab^2 + rho_ab^2/rho_a^2, >= 2

    /// Throws DomainError unless M >= 0 and R >= 2.
    void validate() const;
    static SeparationParams from_moments(double nu_a, double rho2_a, double nu_ab, double rho2_ab);
};

/// Probability that two same-subspace clusters with t independent samples exceed
/// d = 1/sqrt(t-1). Clamped to [0, 1]. Requires t >= 2.
double epsilon_t(std::size_t t);

/// Probability that two different-subspace clusters with t independent samples fall
/// below d = 1/sqrt(t-1). Clamped to [0, 1]. Requires t >= 2.
double delta_t(std::size_t t, const SeparationParams& params);

/// Positive root of 4 a^2 + (R-2)(1+M) a - 2 R (1+M) = 0.
double psi(const SeparationParams& params);

/// ceil(1 + 16 / ln(psi)^2). Throws NoFiniteT when psi <= 1 + 1e-12.
std::size_t t_min(const SeparationParams& params);

/// Density of the angle between two independent uniform points on S^{p-1}:
/// Gamma(p/2) / (sqrt(pi) Gamma((p-1)/2)) sin(theta)^(p-2) on [0, pi].
double angle_pdf(double theta, double p);

struct BoundReport {
    std::size_t t = 0;
    double eps_t = 0.0;
    double delta_t = 0.0;
    std::optional<std::size_t> t_min;  ///< empty when psi <= 1
    double psi_ab = 1.0;
    double alpha_t = 1.0;  ///< exp(4 / sqrt(t-1))
    double c = 0.0;        ///< 4 (exp(2 / sqrt(t-1)) - 1/2)
};

BoundReport bound_report(std::size_t t, const SeparationParams& params);

}  // namespace angclust
