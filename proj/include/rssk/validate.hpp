#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rssk/analysis.hpp"
#include "rssk/config.hpp"
#include "rssk/montecarlo.hpp"
#include "rssk/presets.hpp"

namespace rssk {

struct CheckResult {
    std::string name;
    bool gated = true;  // measurements are reported but never fail the run
    bool pass = true;
    std::string details;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.gated && !c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j;
            j["name"] = c.name;
            j["gated"] = c.gated;
            j["pass"] = c.pass;
            j["details"] = c.details;
            arr.push_back(j);
        }
        nlohmann::json root;
        root["checks"] = arr;
        root["all_pass"] = all_pass();
        return root;
    }
};

namespace detail_validate {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace detail_validate

// Closed form vs quadrature of the conditional PEP with the two-exponential
// Q approximation. These are two routes to the same integral, so agreement
// is a hard correctness gate. `closed_form_fn` is injectable so the check
// itself can be exercised against a deliberately broken evaluator.
inline CheckResult check_mgf_identity(
    std::function<double(const EffectiveChannelParams&, const CompositeStats&)> closed_form_fn =
        [](const EffectiveChannelParams& p, const CompositeStats& s) {
            return upep_closed_form(p, s, ClosedForm::exact_zeta);
        },
    double tol = 1e-8) {
    CheckResult res{"mgf_identity", true, true, ""};
    double worst = 0.0;
    std::string worst_at;
    for (double rho : {1.0, 100.0, 10000.0})
        for (double se2 : {0.0, 1.0, 3.0})
            for (double kappa : {0.0, db_to_linear(3.0)})
                for (int L : {144, 256}) {
                    const CompositeStats stats = composite_stats(L, kappa);
                    const EffectiveChannelParams params{rho, correlation_coefficient(se2), se2, L};
                    const double cf = closed_form_fn(params, stats);
                    const double quad = upep_quadrature(params, stats, QKind::approx);
                    const double rel = std::abs(quad - cf) / cf;
                    if (rel > worst) {
                        worst = rel;
                        worst_at = "rho=" + detail_validate::fmt(rho) +
                                   " sigma_e_sq=" + detail_validate::fmt(se2) +
                                   " kappa=" + detail_validate::fmt(kappa) +
                                   " L=" + std::to_string(L);
                    }
                }
    res.pass = worst <= tol;
    res.details = "max rel diff " + detail_validate::fmt(worst) + " (tol " +
                  detail_validate::fmt(tol) + ") at " + worst_at;
    return res;
}

// Sampled magnitude moments against their closed forms, reduced draw count.
inline CheckResult check_moments(std::uint64_t seed = 424242, long long draws = 200000) {
    CheckResult res{"magnitude_moments", true, true, ""};
    Xoshiro256pp rng(seed);
    const double n = static_cast<double>(draws);

    double sum = 0.0, sum2 = 0.0;
    for (long long i = 0; i < draws; ++i) {
        const double a = detail::mag(rng.cnormal());
        sum += a;
        sum2 += a * a;
    }
    const MagnitudeMoments ray = rayleigh_moments();
    const double mean_a = sum / n;
    const double var_a = sum2 / n - mean_a * mean_a;
    const double se_mean = std::sqrt(ray.variance / n);
    bool ok = std::abs(mean_a - ray.mean) <= 5.0 * se_mean;

    const double kappa = db_to_linear(3.0);
    const MagnitudeMoments ric = rician_moments(kappa);
    Xoshiro256pp rng2(derive_seed(seed, 1));
    std::vector<cplx> h(1);
    sum = 0.0;
    sum2 = 0.0;
    for (long long i = 0; i < draws; ++i) {
        sample_ris_ue_estimate(rng2, 1, kappa, 0.5, 0.25 * std::numbers::pi, h);
        const double b = detail::mag(h[0]);
        sum += b;
        sum2 += b * b;
    }
    const double mean_b = sum / n;
    const double var_b = sum2 / n - mean_b * mean_b;
    ok = ok && std::abs(mean_b - ric.mean) <= 5.0 * std::sqrt(ric.variance / n);
    ok = ok && std::abs(var_a - ray.variance) <= 0.02 * ray.variance;
    ok = ok && std::abs(var_b - ric.variance) <= 0.02 * ric.variance;
    res.pass = ok;
    res.details = "alpha mean " + detail_validate::fmt(mean_a) + " (expect " +
                  detail_validate::fmt(ray.mean) + "), beta mean " + detail_validate::fmt(mean_b) +
                  " (expect " + detail_validate::fmt(ric.mean) + ")";
    return res;
}

// Closed form at rho = 1e12 against the analytic high-SNR limit; also
// reports how far the alternate asymptote sits from that limit.
inline CheckResult check_asymptote_limit(double tol = 1e-4) {
    CheckResult res{"asymptote_limit", true, true, ""};
    const double kappa = db_to_linear(3.0);
    double worst = 0.0;
    std::string extra;
    for (int L : {144, 256}) {
        const CompositeStats stats = composite_stats(L, kappa);
        const EffectiveChannelParams params{1e12, correlation_coefficient(0.1), 0.1, L};
        const double cf = upep_closed_form(params, stats, ClosedForm::exact_zeta);
        const double limit = upep_asymptotic(L, kappa, 0.1, AsymptoticForm::limit);
        const double alt = upep_asymptotic(L, kappa, 0.1, AsymptoticForm::alt);
        worst = std::max(worst, std::abs(cf - limit) / limit);
        if (L == 144)
            extra = "; alt form " + detail_validate::fmt(alt) + " vs limit " +
                    detail_validate::fmt(limit) + " (ratio " + detail_validate::fmt(limit / alt) +
                    ", alternate second exponent halves the denominator)";
    }
    res.pass = worst <= tol;
    res.details = "max rel diff closed(1e12) vs limit " + detail_validate::fmt(worst) + extra;
    return res;
}

// Reduced-trials simulation against the closed form. The closed form rides
// on the two-exponential Q bound and a one-degree-of-freedom CLT reduction,
// both of which overestimate; the simulated/closed ratio therefore sits
// around 0.7-1.0 in the waterfall. The band is wide enough to absorb that
// and tight enough to catch structural breakage.
inline CheckResult check_sim_vs_closed_form(int workers = 0, std::uint64_t seed = 515151) {
    CheckResult res{"sim_vs_closed_form", true, true, ""};
    SystemConfig cfg;
    cfg.n_t = 2;
    cfg.L = 256;
    cfg.kappa = db_to_linear(3.0);
    cfg.sigma_e_sq = 0.1;
    cfg.trials = 30000;
    cfg.seed = seed;
    cfg.snr_db_list = {-38.0, -36.0};
    const SweepResult sim = sweep(cfg, workers);
    const CompositeStats stats = composite_stats(cfg.L, cfg.kappa);
    bool ok = true;
    std::string detail_str;
    for (const auto& pt : sim.points) {
        const EffectiveChannelParams params{db_to_linear(pt.snr_db), cfg.zeta(), cfg.sigma_e_sq,
                                            cfg.L};
        const double cf = abep_union_bound(upep_closed_form(params, stats), cfg.n_t);
        const double ratio = pt.ber / cf;
        ok = ok && ratio >= 0.5 && ratio <= 1.1;
        detail_str += (detail_str.empty() ? "" : ", ") + detail_validate::fmt(pt.snr_db) +
                      " dB ratio " + detail_validate::fmt(ratio);
    }
    res.pass = ok;
    res.details = "sim/closed-form in [0.5, 1.1]: " + detail_str;
    return res;
}

// Reflect phases matched to the true instead of the estimated channel:
// reported so the cost of that (unavailable) knowledge is on record.
inline CheckResult measure_phase_reference_gap(int workers = 0, std::uint64_t seed = 616161) {
    CheckResult res{"phase_reference_gap", false, true, ""};
    SystemConfig cfg;
    cfg.n_t = 2;
    cfg.L = 144;
    cfg.kappa = db_to_linear(3.0);
    cfg.sigma_e_sq = 1.0;
    cfg.trials = 40000;
    cfg.seed = seed;
    cfg.snr_db_list = {-28.0};
    const BerPoint est = sweep(cfg, workers).points.front();
    cfg.phase_reference = PhaseReference::true_channel;
    const BerPoint tru = sweep(cfg, workers).points.front();
    res.details = "BER at -28 dB, sigma_e_sq=1: estimated-phase " + detail_validate::fmt(est.ber) +
                  ", true-phase " + detail_validate::fmt(tru.ber);
    return res;
}

inline ValidationReport run_validation(int workers = 0) {
    ValidationReport report;
    report.checks.push_back(check_mgf_identity());
    report.checks.push_back(check_moments());
    report.checks.push_back(check_asymptote_limit());
    report.checks.push_back(check_sim_vs_closed_form(workers));
    report.checks.push_back(measure_phase_reference_gap(workers));
    return report;
}

}  // namespace rssk
