#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "rssk/rng.hpp"
#include "rssk/special_math.hpp"

namespace rssk {

using cplx = std::complex<double>;

// Mean and variance of a fading-magnitude distribution (unit mean power).
struct MagnitudeMoments {
    double mean;
    double variance;
};

// zeta = 1 / sqrt(1 + sigma_e_sq); 1 under perfect estimation.
inline double correlation_coefficient(double sigma_e_sq) {
    if (!std::isfinite(sigma_e_sq) || sigma_e_sq < 0.0)
        throw std::domain_error("correlation_coefficient: sigma_e_sq must be finite and >= 0");
    return 1.0 / std::sqrt(1.0 + sigma_e_sq);
}

// Uniform linear array response: element l gets phase 2 pi (d/lambda) l sin(phi).
inline std::vector<cplx> steering_vector(int L, double d_over_lambda, double phi) {
    if (L < 1) throw std::domain_error("steering_vector: L must be >= 1");
    if (!std::isfinite(d_over_lambda) || !std::isfinite(phi))
        throw std::domain_error("steering_vector: non-finite parameter");
    std::vector<cplx> a(static_cast<std::size_t>(L));
    const double step = 2.0 * std::numbers::pi * d_over_lambda * std::sin(phi);
    for (int l = 0; l < L; ++l) a[static_cast<std::size_t>(l)] = std::polar(1.0, step * l);
    return a;
}

// i.i.d. CN(0,1) entries; column n (antenna) occupies out[n*L .. n*L+L).
inline void sample_bs_ris(Xoshiro256pp& rng, int L, int n_t, std::span<cplx> out) {
    if (L < 1 || n_t < 1) throw std::domain_error("sample_bs_ris: invalid dimensions");
    if (out.size() != static_cast<std::size_t>(L) * static_cast<std::size_t>(n_t))
        throw std::invalid_argument("sample_bs_ris: output span has wrong size");
    for (auto& v : out) v = rng.cnormal();
}

inline std::vector<cplx> sample_bs_ris(Xoshiro256pp& rng, int L, int n_t) {
    std::vector<cplx> g(static_cast<std::size_t>(L) * static_cast<std::size_t>(n_t));
    sample_bs_ris(rng, L, n_t, g);
    return g;
}

// Estimated reflect-link channel: sqrt(kappa/(kappa+1)) * LoS + sqrt(1/(kappa+1)) * CN(0,1).
// Per-element mean power is 1 for every kappa.
inline void sample_ris_ue_estimate(Xoshiro256pp& rng, int L, double kappa, double d_over_lambda,
                                   double phi_los, std::span<cplx> out) {
    if (L < 1) throw std::domain_error("sample_ris_ue_estimate: L must be >= 1");
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw std::domain_error("sample_ris_ue_estimate: kappa must be finite and >= 0");
    if (out.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("sample_ris_ue_estimate: output span has wrong size");
    const double los_amp = std::sqrt(kappa / (kappa + 1.0));
    const double nlos_amp = std::sqrt(1.0 / (kappa + 1.0));
    const double step = 2.0 * std::numbers::pi * d_over_lambda * std::sin(phi_los);
    for (int l = 0; l < L; ++l)
        out[static_cast<std::size_t>(l)] =
            los_amp * std::polar(1.0, step * l) + nlos_amp * rng.cnormal();
}

inline std::vector<cplx> sample_ris_ue_estimate(Xoshiro256pp& rng, int L, double kappa,
                                                double d_over_lambda, double phi_los) {
    std::vector<cplx> h(static_cast<std::size_t>(L));
    sample_ris_ue_estimate(rng, L, kappa, d_over_lambda, phi_los, h);
    return h;
}

// h = zeta * h_hat + sqrt(1 - zeta^2) * delta_h, element-wise.
inline void compose_true_channel(std::span<const cplx> h_hat, std::span<const cplx> delta_h,
                                 double zeta, std::span<cplx> out) {
    if (h_hat.size() != delta_h.size() || h_hat.size() != out.size())
        throw std::invalid_argument("compose_true_channel: length mismatch");
    if (!(zeta > 0.0) || zeta > 1.0)
        throw std::domain_error("compose_true_channel: zeta must lie in (0, 1]");
    const double err_amp = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = zeta * h_hat[l] + err_amp * delta_h[l];
}

inline std::vector<cplx> compose_true_channel(std::span<const cplx> h_hat,
                                              std::span<const cplx> delta_h, double zeta) {
    std::vector<cplx> h(h_hat.size());
    compose_true_channel(h_hat, delta_h, zeta, h);
    return h;
}

// Rician magnitude moments for unit mean power and shape kappa (linear):
//   mean = sqrt(pi/(4k+4)) e^(-k/2) [(1+k) I0(k/2) + k I1(k/2)],  var = 1 - mean^2.
inline MagnitudeMoments rician_moments(double kappa) {
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw std::domain_error("rician_moments: kappa must be finite and >= 0");
    const double half = 0.5 * kappa;
    const double mean = std::sqrt(std::numbers::pi / (4.0 * kappa + 4.0)) * std::exp(-half) *
                        ((1.0 + kappa) * bessel_i0(half) + kappa * bessel_i1(half));
    return {mean, 1.0 - mean * mean};
}

// Rayleigh special case: mean sqrt(pi)/2, variance (4 - pi)/4.
inline MagnitudeMoments rayleigh_moments() {
    const double mean = 0.5 * std::sqrt(std::numbers::pi);
    return {mean, (4.0 - std::numbers::pi) / 4.0};
}

// Reflect-element phases phi_l = theta_l + psi_hat_l with theta_l = -arg(g_l)
// and psi_hat_l = -arg(h_hat_l), so h_hat_l e^{j phi_l} g_l = |h_hat_l||g_l|.
// A zero-magnitude element contributes phase 0.
inline std::vector<double> optimal_phases(std::span<const cplx> g_col,
                                          std::span<const cplx> h_hat) {
    if (g_col.size() != h_hat.size())
        throw std::invalid_argument("optimal_phases: length mismatch");
    std::vector<double> phases(g_col.size());
    for (std::size_t l = 0; l < g_col.size(); ++l) {
        const double theta = (g_col[l] == cplx{} ? 0.0 : -std::arg(g_col[l]));
        const double psi = (h_hat[l] == cplx{} ? 0.0 : -std::arg(h_hat[l]));
        phases[l] = theta + psi;
    }
    return phases;
}

// One full channel draw: BS-RIS matrix, estimated and true reflect channels.
struct ChannelRealization {
    int L = 0;
    int n_t = 0;
    std::vector<cplx> g;        // L x n_t, column-major (per-antenna contiguous)
    std::vector<cplx> h_hat;    // estimated reflect channel
    std::vector<cplx> delta_h;  // estimation error, i.i.d. CN(0, sigma_e_sq)
    std::vector<cplx> h_true;   // zeta h_hat + sqrt(1-zeta^2) delta_h
    double zeta = 1.0;

    std::span<const cplx> antenna_column(int n) const {
        return {g.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(L),
                static_cast<std::size_t>(L)};
    }
};

inline ChannelRealization sample_realization(Xoshiro256pp& rng, int L, int n_t, double kappa,
                                             double sigma_e_sq, double d_over_lambda,
                                             double phi_los) {
    ChannelRealization r;
    r.L = L;
    r.n_t = n_t;
    r.zeta = correlation_coefficient(sigma_e_sq);
    r.g = sample_bs_ris(rng, L, n_t);
    r.h_hat = sample_ris_ue_estimate(rng, L, kappa, d_over_lambda, phi_los);
    r.delta_h.resize(static_cast<std::size_t>(L));
    const double err_std = std::sqrt(sigma_e_sq);
    for (auto& v : r.delta_h) v = err_std * rng.cnormal();
    r.h_true = compose_true_channel(r.h_hat, r.delta_h, r.zeta);
    return r;
}

}  // namespace rssk
