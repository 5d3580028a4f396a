#pragma once

namespace angclust::special {

/// Regularized incomplete beta I_x(a, b) for x in [0, 1], a, b > 0.
double reg_inc_beta(double x, double a, double b);

/// Lower regularized incomplete gamma P(a, x) for a > 0, x >= 0.
double reg_inc_gamma_p(double a, double x);

/// Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_inc_gamma_q(double a, double x);

/// CDF of the beta prime distribution, I_{x/(1+x)}(a, b). Returns 1 for x = +inf.
double beta_prime_cdf(double x, double a, double b);

/// CDF of the central chi-squared distribution with k degrees of freedom; 0 for x <= 0.
double chi2_cdf(double x, double k);

/// CDF of the noncentral chi-squared distribution as a Poisson(lambda/2) mixture of
/// central chi-squared CDFs, summed outward from the Poisson mode until the
/// remaining Poisson mass on both sides is below 1e-14.
double noncentral_chi2_cdf(double x, double k, double lambda);

}  // namespace angclust::special
