#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rssk {

namespace detail {

// Ascending power series I_nu(x) = sum_k (x/2)^(2k+nu) / (k! (k+nu)!).
// All terms are positive, so there is no cancellation; terminate once a
// term drops below 1e-17 of the partial sum.
inline double bessel_i_series(double x, int nu) {
    const double q = 0.25 * x * x;
    double term = (nu == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Large-argument expansion I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k a_k(nu) x^-k,
// truncated at the smallest term. For x >= 15 the truncation error is below
// ~e^(-2x), well under the 1e-12 budget.
inline double bessel_i_asymptotic(double x, int nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
    }
    return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
}

inline void require_finite_nonneg(double x, const char* msg) {
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error(msg);
}

}  // namespace detail

// Modified Bessel function of the first kind, order zero.
inline double bessel_i0(double x) {
    detail::require_finite_nonneg(x, "bessel_i0: argument must be finite and non-negative");
    return x <= 15.0 ? detail::bessel_i_series(x, 0) : detail::bessel_i_asymptotic(x, 0);
}

// Modified Bessel function of the first kind, order one.
inline double bessel_i1(double x) {
    detail::require_finite_nonneg(x, "bessel_i1: argument must be finite and non-negative");
    return x <= 15.0 ? detail::bessel_i_series(x, 1) : detail::bessel_i_asymptotic(x, 1);
}

// Gaussian tail probability Q(x) = P(Z > x), Z standard normal.
inline double q_exact(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_exact: argument must be finite");
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    return 0.5 * std::erfc(x * inv_sqrt2);
}

// Two-exponential approximation of Q(x) for x >= 0:
//   Q(x) ~= (1/12) exp(-x^2/2) + (1/4) exp(-2x^2/3).
inline double q_approx(double x) {
    detail::require_finite_nonneg(x, "q_approx: argument must be finite and non-negative");
    const double x2 = x * x;
    return std::exp(-0.5 * x2) / 12.0 + std::exp(-2.0 * x2 / 3.0) / 4.0;
}

// Law of X = Z^2 with Z ~ Normal(mu, sigma_sq): noncentral chi-square with
// one degree of freedom, parameterized by the underlying Gaussian.
struct NoncentralChiSq1 {
    double mu;
    double sigma_sq;

    NoncentralChiSq1(double mu_, double sigma_sq_) : mu(mu_), sigma_sq(sigma_sq_) {
        if (!std::isfinite(mu) || !std::isfinite(sigma_sq) || sigma_sq <= 0.0)
            throw std::domain_error("NoncentralChiSq1: requires finite mu and sigma_sq > 0");
    }
};

// E[exp(sX)] = (1 - 2 s sigma^2)^(-1/2) exp(mu^2 s / (1 - 2 s sigma^2)),
// defined for 1 - 2 s sigma^2 > 0.
inline double mgf(const NoncentralChiSq1& dist, double s) {
    if (!std::isfinite(s)) throw std::domain_error("mgf: s must be finite");
    const double denom = 1.0 - 2.0 * s * dist.sigma_sq;
    if (denom <= 0.0) throw std::domain_error("mgf: s is at or beyond the singularity 1/(2 sigma_sq)");
    return std::exp(dist.mu * dist.mu * s / denom) / std::sqrt(denom);
}

// Density of Z^2 written as the folded squared-Gaussian form
//   f(x) = (8 pi sigma^2 x)^(-1/2) [exp(-(sqrt(x)-mu)^2 / 2 sigma^2)
//                                 + exp(-(sqrt(x)+mu)^2 / 2 sigma^2)],
// which avoids the cancellation the Bessel form suffers for large mu.
inline double pdf(const NoncentralChiSq1& dist, double x) {
    if (!std::isfinite(x) || x <= 0.0) throw std::domain_error("pdf: requires x > 0");
    const double r = std::sqrt(x);
    const double inv2s = 0.5 / dist.sigma_sq;
    const double dm = r - dist.mu;
    const double dp = r + dist.mu;
    const double norm = 1.0 / std::sqrt(8.0 * std::numbers::pi * dist.sigma_sq * x);
    return norm * (std::exp(-dm * dm * inv2s) + std::exp(-dp * dp * inv2s));
}

}  // namespace rssk
