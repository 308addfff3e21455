#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

#include "rssk/channel_model.hpp"
#include "rssk/config.hpp"
#include "rssk/detector.hpp"
#include "rssk/rng.hpp"

namespace rssk {

// One Monte Carlo measurement at a single SNR.
struct BerPoint {
    double snr_db = 0.0;
    long long trials = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    double ci95_half_width = 0.0;  // normal-approximation binomial
};

struct SweepResult {
    SystemConfig config;
    std::vector<BerPoint> points;  // sorted by snr_db
    static constexpr const char* curve_kind = "simulated";
};

struct TrialResult {
    int sent;
    int detected;
};

// Reusable per-thread buffers; keeps the hot loop allocation-free.
struct TrialScratch {
    std::vector<cplx> g, h_hat, delta_h, h_true, rot, anchors;
};

namespace detail {
inline double mag(cplx z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }
}  // namespace detail

// One transmission through the full chain: fresh channels, uniform antenna
// choice, reflect phases aligned to the chosen antenna, ML detection.
// Power convention: P_s = rho_linear, N0 = noise_power (1 unless a test
// switches the noise off). The detection anchors are built from the
// configured reflect phases, which the receiver knows: the sent antenna's
// anchor is then the real aligned gain and every other hypothesis keeps its
// per-element phase mismatch.
inline TrialResult run_trial(Xoshiro256pp& rng, const SystemConfig& cfg, double rho_linear,
                             double noise_power, TrialScratch& scratch) {
    const int L = cfg.L;
    const int n_t = cfg.n_t;
    const auto lu = static_cast<std::size_t>(L);
    scratch.g.resize(lu * static_cast<std::size_t>(n_t));
    scratch.h_hat.resize(lu);
    scratch.delta_h.resize(lu);
    scratch.h_true.resize(lu);
    scratch.rot.resize(lu);
    scratch.anchors.resize(static_cast<std::size_t>(n_t));

    sample_bs_ris(rng, L, n_t, scratch.g);
    sample_ris_ue_estimate(rng, L, cfg.kappa, cfg.d_over_lambda, cfg.phi_los, scratch.h_hat);
    const double err_std = std::sqrt(cfg.sigma_e_sq);
    for (auto& v : scratch.delta_h) v = err_std * rng.cnormal();
    const double zeta = cfg.zeta();
    compose_true_channel(scratch.h_hat, scratch.delta_h, zeta, scratch.h_true);

    const int sent = static_cast<int>(rng.uniform_pow2(static_cast<std::uint32_t>(n_t)));
    const cplx* g_sent = scratch.g.data() + static_cast<std::size_t>(sent) * lu;
    const cplx* ref = (cfg.phase_reference == PhaseReference::estimated)
                          ? scratch.h_hat.data()
                          : scratch.h_true.data();
    for (std::size_t l = 0; l < lu; ++l) {
        const double ga = detail::mag(g_sent[l]);
        const double ha = detail::mag(ref[l]);
        const cplx ug = (ga > 0.0) ? std::conj(g_sent[l]) / ga : cplx{1.0, 0.0};
        const cplx uh = (ha > 0.0) ? std::conj(ref[l]) / ha : cplx{1.0, 0.0};
        scratch.rot[l] = ug * uh;  // e^{j phi_l}
    }

    cplx received{};
    for (std::size_t l = 0; l < lu; ++l) received += scratch.h_true[l] * scratch.rot[l] * g_sent[l];
    const double sqrt_ps = std::sqrt(rho_linear);
    const cplx y = sqrt_ps * received +
                   (noise_power > 0.0 ? std::sqrt(noise_power) * rng.cnormal() : cplx{});

    for (int n = 0; n < n_t; ++n) {
        const cplx* col = scratch.g.data() + static_cast<std::size_t>(n) * lu;
        cplx acc{};
        for (std::size_t l = 0; l < lu; ++l) acc += scratch.h_hat[l] * scratch.rot[l] * col[l];
        scratch.anchors[static_cast<std::size_t>(n)] = acc;
    }
    const int detected = ml_detect(y, sqrt_ps * zeta, scratch.anchors);
    return {sent, detected};
}

inline TrialResult run_trial(Xoshiro256pp& rng, const SystemConfig& cfg, double rho_linear,
                             double noise_power = 1.0) {
    TrialScratch scratch;
    return run_trial(rng, cfg, rho_linear, noise_power, scratch);
}

// Trials are partitioned into fixed-size chunks, each with a random stream
// derived from (seed, chunk index) alone. Workers pull chunks off a shared
// counter; the per-chunk error counts are summed in chunk order, so the
// result is bit-identical for any worker count.
inline constexpr long long kChunkTrials = 8192;

inline BerPoint estimate_ber(const SystemConfig& cfg, double snr_db, long long trials,
                             std::uint64_t seed, int workers = 1, double noise_power = 1.0) {
    if (trials < 1) throw ConfigError("estimate_ber: trials must be >= 1");
    const double rho = db_to_linear(snr_db);
    const long long n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<long long> chunk_bit_errors(static_cast<std::size_t>(n_chunks), 0);
    std::atomic<long long> next_chunk{0};

    auto worker_fn = [&]() {
        TrialScratch scratch;
        for (;;) {
            const long long c = next_chunk.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            Xoshiro256pp rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
            const long long t_begin = c * kChunkTrials;
            const long long t_end = std::min(trials, t_begin + kChunkTrials);
            long long bits = 0;
            for (long long t = t_begin; t < t_end; ++t) {
                const TrialResult r = run_trial(rng, cfg, rho, noise_power, scratch);
                bits += std::popcount(static_cast<unsigned>(r.sent ^ r.detected));
            }
            chunk_bit_errors[static_cast<std::size_t>(c)] = bits;
        }
    };

    int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    n_workers = static_cast<int>(std::min<long long>(n_workers, n_chunks));
    if (n_workers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    long long bit_errors = 0;
    for (long long b : chunk_bit_errors) bit_errors += b;

    BerPoint p;
    p.snr_db = snr_db;
    p.trials = trials;
    p.bit_errors = bit_errors;
    const double n_bits = static_cast<double>(trials) * cfg.bits_per_symbol();
    p.ber = static_cast<double>(bit_errors) / n_bits;
    p.ci95_half_width = 1.96 * std::sqrt(std::max(0.0, p.ber * (1.0 - p.ber)) / n_bits);
    return p;
}

// One BerPoint per configured SNR, sorted ascending. Per-point seeds are
// derived from (config.seed, index in the sorted grid), so permuting the
// input list does not change any point's value.
inline SweepResult sweep(const SystemConfig& cfg, int workers = 1, double noise_power = 1.0) {
    cfg.validate();
    std::vector<double> grid = cfg.snr_db_list;
    std::sort(grid.begin(), grid.end());
    SweepResult result;
    result.config = cfg;
    result.points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::uint64_t point_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        result.points.push_back(
            estimate_ber(cfg, grid[i], cfg.trials, point_seed, workers, noise_power));
    }
    return result;
}

}  // namespace rssk
