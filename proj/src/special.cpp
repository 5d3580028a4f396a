#include "angclust/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "angclust/error.hpp"

namespace angclust::special {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_cf(double x, double a, double b) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw DomainError("incomplete beta continued fraction did not converge");
}

// I_x(a, b) given both x and 1 - x, so callers can pass an exact complement.
double inc_beta(double x, double xc, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete beta needs a, b > 0");
    if (!(x >= 0.0) || !(x <= 1.0)) throw DomainError("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (xc == 0.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(xc);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_cf(x, a, b) / a;
    return 1.0 - std::exp(log_front) * beta_cf(xc, b, a) / b;
}

double gamma_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw DomainError("incomplete gamma series did not converge");
}

double gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw DomainError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0)) throw DomainError("incomplete gamma needs a > 0");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma needs x >= 0");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) { return inc_beta(x, 1.0 - x, a, b); }

double reg_inc_gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double reg_inc_gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_series(a, x) : gamma_cf(a, x);
}

double beta_prime_cdf(double x, double a, double b) {
    if (!(x >= 0.0)) throw DomainError("beta prime cdf needs x >= 0");
    if (std::isinf(x)) return 1.0;
    return inc_beta(x / (1.0 + x), 1.0 / (1.0 + x), a, b);
}

double chi2_cdf(double x, double k) {
    if (!(k > 0.0)) throw DomainError("chi-squared needs k > 0");
    if (x <= 0.0) return 0.0;
    return reg_inc_gamma_p(0.5 * k, 0.5 * x);
}

double noncentral_chi2_cdf(double x, double k, double lambda) {
    if (!(k > 0.0) || !(lambda >= 0.0)) throw DomainError("noncentral chi-squared needs k > 0, lambda >= 0");
    if (x <= 0.0) return 0.0;
    if (lambda == 0.0) return chi2_cdf(x, k);

    constexpr double kTail = 1e-14;
    const double mu = 0.5 * lambda;
    const auto mode = static_cast<long>(std::floor(mu));
    auto weight = [&](long j) {
        return std::exp(-mu + static_cast<double>(j) * std::log(mu) - std::lgamma(static_cast<double>(j) + 1.0));
    };

    const double w_mode = weight(mode);
    double total = w_mode * chi2_cdf(x, k + 2.0 * static_cast<double>(mode));

    // Upward: weights shrink by mu/(j+1) < 1 past the mode, so the tail is bounded geometrically.
    double w = w_mode;
    for (long j = mode + 1;; ++j) {
        w *= mu / static_cast<double>(j);
        total += w * chi2_cdf(x, k + 2.0 * static_cast<double>(j));
        const double r = mu / static_cast<double>(j + 1);
        if (r < 1.0 && w * r / (1.0 - r) < kTail) break;
    }
    // Downward to j = 0; terms with negligible remaining mass below are skipped.
    w = w_mode;
    for (long j = mode - 1; j >= 0; --j) {
        w *= static_cast<double>(j + 1) / mu;
        total += w * chi2_cdf(x, k + 2.0 * static_cast<double>(j));
        // Below the mode the weights fall at least geometrically with ratio j/mu.
        const double r = static_cast<double>(j) / mu;
        if (r < 1.0 && w * r / (1.0 - r) < kTail) break;
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace angclust::special
