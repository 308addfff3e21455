#pragma once

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rssk/channel_model.hpp"
#include "rssk/quadrature.hpp"
#include "rssk/special_math.hpp"

namespace rssk {

// CLT statistics of the composite channel difference across the L elements:
// mu is the mean, sigma_sq the variance of the fitted real Gaussian.
struct CompositeStats {
    double mu;
    double sigma_sq;
};

// Scenario parameters entering the pairwise error probability.
struct EffectiveChannelParams {
    double rho;         // SNR, linear
    double zeta;        // estimation correlation coefficient, (0, 1]
    double sigma_e_sq;  // estimation error variance per element
    int L;              // reflecting elements

    double noise_inflation() const {  // 1 + rho (1 - zeta^2) sigma_e^2 L
        return 1.0 + rho * (1.0 - zeta * zeta) * sigma_e_sq * static_cast<double>(L);
    }
};

// Density of the phase difference of two independent uniform phases:
// triangular on (-2 pi, 2 pi), peak 1/(2 pi) at 0.
inline double omega_pdf(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (x <= -two_pi || x >= two_pi) return 0.0;
    return (1.0 - std::abs(x) / two_pi) / two_pi;
}

// mu = sqrt(pi) L E(beta)/2, sigma^2 = L (8 - pi E(beta)^2)/4 with E(beta)
// the Rician magnitude mean for shape kappa.
inline CompositeStats composite_stats(int L, double kappa) {
    if (L < 1) throw std::domain_error("composite_stats: L must be >= 1");
    const double eb = rician_moments(kappa).mean;
    const double mu = 0.5 * std::sqrt(std::numbers::pi) * static_cast<double>(L) * eb;
    const double sigma_sq = static_cast<double>(L) * (8.0 - std::numbers::pi * eb * eb) / 4.0;
    return {mu, sigma_sq};
}

// Pairwise error probability conditioned on x = |composite difference|^2:
//   Q( sqrt( rho zeta^2 x / (2 (1 + rho (1-zeta^2) sigma_e^2 L)) ) ).
inline double cpep(double x, const EffectiveChannelParams& p) {
    if (!std::isfinite(x) || x < 0.0) throw std::domain_error("cpep: x must be finite and >= 0");
    if (!(p.rho > 0.0)) throw std::domain_error("cpep: rho must be > 0");
    return q_exact(std::sqrt(p.rho * p.zeta * p.zeta * x / (2.0 * p.noise_inflation())));
}

// Closed-form branch selection. exact_zeta keeps zeta as an independent
// parameter; substituted is the variant with zeta^2 = 1/(1+sigma_e^2) folded
// in, which drops a (1+sigma_e^2) factor and deviates for large sigma_e^2.
enum class ClosedForm { exact_zeta, substituted };

// Unconditional pairwise error probability in closed form: the MGF of the
// squared composite difference evaluated at the two exponents of the
// two-exponential Q approximation. Value lies in (0, 1/3].
inline double upep_closed_form(const EffectiveChannelParams& p, const CompositeStats& s,
                               ClosedForm form = ClosedForm::exact_zeta) {
    if (!(p.rho > 0.0)) throw std::domain_error("upep_closed_form: rho must be > 0");
    if (!(s.sigma_sq > 0.0)) throw std::domain_error("upep_closed_form: sigma_sq must be > 0");
    double a, rz;  // noise inflation and effective rho zeta^2
    if (form == ClosedForm::exact_zeta) {
        a = p.noise_inflation();
        rz = p.rho * p.zeta * p.zeta;
    } else {
        a = 1.0 + p.rho * p.sigma_e_sq * p.sigma_e_sq * static_cast<double>(p.L);
        rz = p.rho;
    }
    const double mu2 = s.mu * s.mu;
    const double t1 = std::sqrt(2.0 * a / (2.0 * a + rz * s.sigma_sq)) / 12.0 *
                      std::exp(-mu2 * rz / (4.0 * a + 2.0 * rz * s.sigma_sq));
    const double t2 = std::sqrt(3.0 * a / (3.0 * a + 2.0 * s.sigma_sq * rz)) / 4.0 *
                      std::exp(-mu2 * rz / (3.0 * a + 2.0 * s.sigma_sq * rz));
    return t1 + t2;
}

enum class QKind { exact, approx };

// Numerical oracle for the same quantity: integrates the conditional PEP
// against the noncentral chi-square density. Substituting w = sqrt(x) turns
// the weight into a folded normal, so the integrand is
//   q(sqrt(c) w) [phi((w-mu)/sigma) + phi((w+mu)/sigma)] / sigma
// on [0, mu + 13 sigma], with c = rho zeta^2 / (2 (1 + rho (1-zeta^2) se^2 L)).
// The product peak sits near mu / (1 + c sigma^2); passing it as a breakpoint
// keeps the adaptive rule from overlooking a narrow spike at high SNR.
inline double upep_quadrature(const EffectiveChannelParams& p, const CompositeStats& s,
                              QKind kind) {
    if (!(p.rho > 0.0)) throw std::domain_error("upep_quadrature: rho must be > 0");
    const double c = p.rho * p.zeta * p.zeta / (2.0 * p.noise_inflation());
    const double mu = s.mu;
    const double sigma = std::sqrt(s.sigma_sq);
    const double sqrt_c = std::sqrt(c);
    const double inv2s = 0.5 / s.sigma_sq;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s.sigma_sq);
    auto integrand = [&](double w) {
        const double q = (kind == QKind::exact) ? q_exact(sqrt_c * w) : q_approx(sqrt_c * w);
        const double dm = w - mu;
        const double dp = w + mu;
        return q * norm * (std::exp(-dm * dm * inv2s) + std::exp(-dp * dp * inv2s));
    };
    const double hi = mu + 13.0 * sigma;
    const double shrink = 1.0 + c * s.sigma_sq;
    const double w_peak = mu / shrink;
    const double s_peak = sigma / std::sqrt(shrink);
    std::vector<double> breaks = {w_peak - 10.0 * s_peak, w_peak, w_peak + 10.0 * s_peak,
                                  mu - 10.0 * sigma, mu};
    auto res = integrate_with_breakpoints(integrand, 0.0, hi, breaks, 1e-11, 0.0, 2000);
    if (!res.converged)
        throw std::runtime_error("upep_quadrature: integration did not converge (value=" +
                                 std::to_string(res.value) + ", error=" +
                                 std::to_string(res.error) + ", evaluations=" +
                                 std::to_string(res.evaluations) + ")");
    return res.value;
}

// Asymptote branch: `limit` is the analytic high-SNR limit of the closed
// form; `alt` is the variant whose second exponential carries half the
// denominator (6 se^4 + 8 - pi E^2 instead of twice that). The two disagree;
// the validation suite reports the measured gap against the numerical limit.
enum class AsymptoticForm { limit, alt };

// SNR-independent error floor under imperfect estimation. Undefined for
// sigma_e_sq = 0: with perfect CSI the UPEP decays to zero instead.
inline double upep_asymptotic(int L, double kappa, double sigma_e_sq,
                              AsymptoticForm form = AsymptoticForm::limit) {
    if (L < 1) throw std::domain_error("upep_asymptotic: L must be >= 1");
    if (!(sigma_e_sq > 0.0))
        throw std::domain_error("upep_asymptotic: no error floor under perfect CSI (sigma_e_sq > 0 required)");
    const double e2 = [&] {
        const double m = rician_moments(kappa).mean;
        return m * m;
    }();
    const double pi = std::numbers::pi;
    const double se4 = sigma_e_sq * sigma_e_sq;
    const double ple2 = pi * static_cast<double>(L) * e2;
    const double t1 = std::sqrt(2.0 * se4 / (8.0 * se4 + 8.0 - pi * e2)) / 6.0 *
                      std::exp(-ple2 / (16.0 * se4 + 16.0 - 2.0 * pi * e2));
    const double d2 = (form == AsymptoticForm::limit) ? (12.0 * se4 + 16.0 - 2.0 * pi * e2)
                                                      : (6.0 * se4 + 8.0 - pi * e2);
    const double t2 = std::sqrt(6.0 * se4 / (6.0 * se4 + 8.0 - pi * e2)) / 4.0 *
                      std::exp(-ple2 / d2);
    return t1 + t2;
}

// Union bound on the average bit error probability when all antenna pairs
// share one UPEP: sum of bit (Hamming) distances over unordered index pairs
// under natural binary labeling, divided by bits per symbol. Equals the UPEP
// itself for n_t = 2.
inline double abep_union_bound(double upep, int n_t) {
    if (n_t < 2 || !std::has_single_bit(static_cast<unsigned>(n_t)))
        throw std::domain_error("abep_union_bound: n_t must be a power of two >= 2");
    if (!std::isfinite(upep) || upep < 0.0 || upep > 1.0)
        throw std::domain_error("abep_union_bound: upep must lie in [0, 1]");
    long long hamming_sum = 0;
    for (int i = 0; i < n_t; ++i)
        for (int j = i + 1; j < n_t; ++j)
            hamming_sum += std::popcount(static_cast<unsigned>(i ^ j));
    const int bits = std::countr_zero(static_cast<unsigned>(n_t));
    return upep * static_cast<double>(hamming_sum) / static_cast<double>(bits);
}

}  // namespace rssk
