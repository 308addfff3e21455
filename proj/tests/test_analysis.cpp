#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rssk/analysis.hpp"
#include "rssk/rng.hpp"

using Catch::Approx;
using rssk::cplx;

namespace {
constexpr double kPi = std::numbers::pi;
const double kKappa3dB = std::pow(10.0, 0.3);

rssk::EffectiveChannelParams params_for(double rho, double sigma_e_sq, int L) {
    return {rho, rssk::correlation_coefficient(sigma_e_sq), sigma_e_sq, L};
}
}  // namespace

TEST_CASE("omega pdf: triangular on (-2pi, 2pi)") {
    CHECK(rssk::omega_pdf(0.0) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
    CHECK(rssk::omega_pdf(2.0 * kPi) == 0.0);
    CHECK(rssk::omega_pdf(-2.0 * kPi) == 0.0);
    CHECK(rssk::omega_pdf(7.0) == 0.0);
    CHECK(rssk::omega_pdf(1.3) == Approx(rssk::omega_pdf(-1.3)).epsilon(1e-15));
    auto mass = rssk::integrate([](double x) { return rssk::omega_pdf(x); }, -2.0 * kPi,
                                2.0 * kPi, 1e-12);
    REQUIRE(mass.converged);
    CHECK(mass.value == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("composite stats: closed-form values") {
    const auto k0 = rssk::composite_stats(144, 0.0);
    CHECK(k0.mu == Approx(36.0 * kPi).epsilon(1e-13));                 // 113.097...
    CHECK(k0.sigma_sq == Approx(288.0 - 9.0 * kPi * kPi).epsilon(1e-13));  // 199.174...

    const double eb = rssk::rician_moments(kKappa3dB).mean;
    const auto k3 = rssk::composite_stats(256, kKappa3dB);
    CHECK(k3.mu == Approx(std::sqrt(kPi) * 256.0 * eb / 2.0).epsilon(1e-14));
    CHECK(k3.sigma_sq == Approx(256.0 * (8.0 - kPi * eb * eb) / 4.0).epsilon(1e-14));
    CHECK(k3.sigma_sq > 0.0);
    CHECK_THROWS_AS(rssk::composite_stats(0, 1.0), std::domain_error);
}

TEST_CASE("composite stats match vs simulated composite-difference moments") {
    // per-element moments of beta_hat (alpha_n - alpha_m e^{-j omega}), scaled by L
    rssk::Xoshiro256pp rng(33001);
    const int L = 256;
    const long long n = 1000000;
    cplx mean_acc{};
    double pow_acc = 0.0;
    std::vector<cplx> h(1);
    for (long long i = 0; i < n; ++i) {
        rssk::sample_ris_ue_estimate(rng, 1, kKappa3dB, 0.5, kPi / 4.0, h);
        const double beta = std::abs(h[0]);
        const cplx gn = rng.cnormal();
        const cplx gm = rng.cnormal();
        // alpha_m e^{-j(theta_n - theta_m)} with theta = -arg g
        const cplx z = beta * (std::abs(gn) - std::abs(gm) * std::polar(1.0, std::arg(gn) -
                                                                                 std::arg(gm)));
        mean_acc += z;
        pow_acc += std::norm(z);
    }
    const cplx mean = mean_acc / static_cast<double>(n);
    const double var = pow_acc / static_cast<double>(n) - std::norm(mean);
    const auto stats = rssk::composite_stats(L, kKappa3dB);
    CHECK(L * mean.real() == Approx(stats.mu).epsilon(0.01));
    CHECK(std::abs(L * mean.imag()) < 0.01 * stats.mu);
    CHECK(L * var == Approx(stats.sigma_sq).epsilon(0.01));
}

TEST_CASE("conditional pep") {
    const auto p = params_for(2.0, 0.0, 144);
    CHECK(rssk::cpep(0.0, p) == Approx(0.5).margin(1e-15));
    CHECK(rssk::cpep(2.0, p) == Approx(0.0786496035251426).epsilon(1e-12));  // Q(sqrt(2))
    CHECK(rssk::cpep(1e6, p) < 1e-300);
    double prev = 0.6;
    for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double v = rssk::cpep(x, p);
        CHECK(v < prev);
        CHECK(v > 0.0);
        CHECK(v <= 0.5);
        prev = v;
    }
    CHECK_THROWS_AS(rssk::cpep(-1.0, p), std::domain_error);
}

TEST_CASE("closed form: limits and form agreement") {
    const auto stats = rssk::composite_stats(144, kKappa3dB);

    SECTION("rho -> 0 gives 1/12 + 1/4") {
        const auto p = params_for(1e-12, 0.1, 144);
        CHECK(rssk::upep_closed_form(p, stats, rssk::ClosedForm::exact_zeta) ==
              Approx(1.0 / 3.0).epsilon(1e-6));
        CHECK(rssk::upep_closed_form(p, stats, rssk::ClosedForm::substituted) ==
              Approx(1.0 / 3.0).epsilon(1e-6));
    }

    SECTION("perfect estimation collapses both forms to one expression") {
        for (double rho : {0.01, 1.0, 100.0}) {
            const auto p = params_for(rho, 0.0, 144);
            const double a = rssk::upep_closed_form(p, stats, rssk::ClosedForm::exact_zeta);
            const double b = rssk::upep_closed_form(p, stats, rssk::ClosedForm::substituted);
            CHECK(a == Approx(b).epsilon(1e-14));
        }
    }

    SECTION("value stays in (0, 1/3]") {
        for (double rho : {1e-6, 1e-3, 1.0, 1e3, 1e9}) {
            for (double se2 : {0.0, 0.1, 3.0}) {
                const double v =
                    rssk::upep_closed_form(params_for(rho, se2, 144), stats);
                CHECK(v > 0.0);
                CHECK(v <= 1.0 / 3.0 + 1e-15);
            }
        }
    }

    SECTION("monotone non-increasing in rho") {
        for (double se2 : {0.0, 0.1, 1.0}) {
            double prev = 1.0;
            for (double e = -1.0; e <= 6.0; e += 0.25) {
                const double v = rssk::upep_closed_form(params_for(std::pow(10.0, e), se2, 144),
                                                        stats);
                CHECK(v <= prev * (1.0 + 1e-12));
                prev = v;
            }
        }
    }

    SECTION("the substituted variant deviates more as sigma_e_sq grows") {
        auto max_gap = [&](double se2) {
            double worst = 0.0;
            for (double e = -4.0; e <= 2.0; e += 0.25) {
                const auto p = params_for(std::pow(10.0, e), se2, 144);
                const double a = rssk::upep_closed_form(p, stats, rssk::ClosedForm::exact_zeta);
                const double b = rssk::upep_closed_form(p, stats, rssk::ClosedForm::substituted);
                worst = std::max(worst, std::abs(b - a) / a);
            }
            return worst;
        };
        const double g01 = max_gap(0.1);
        const double g1 = max_gap(1.0);
        INFO("max rel gap: sigma_e_sq=0.1 -> " << g01 << ", 1.0 -> " << g1);
        CHECK(g01 > 0.01);
        CHECK(g1 > g01);
    }
}

TEST_CASE("closed form equals quadrature with the two-exponential kernel") {
    // the closed form is exactly the MGF evaluation of that integral
    for (int L : {144, 256}) {
        const auto stats = rssk::composite_stats(L, kKappa3dB);
        for (double rho : {1.0, 10.0, 100.0, 1e4}) {
            for (double se2 : {0.0, 0.1, 1.0, 3.0}) {
                const auto p = params_for(rho, se2, L);
                const double cf = rssk::upep_closed_form(p, stats);
                const double quad = rssk::upep_quadrature(p, stats, rssk::QKind::approx);
                CHECK(cf == Approx(quad).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("quadrature oracle: degenerate point mass at zero gain") {
    const rssk::CompositeStats degenerate{0.0, 1e-12};
    const auto p = params_for(1.0, 0.0, 144);
    CHECK(rssk::upep_quadrature(p, degenerate, rssk::QKind::exact) == Approx(0.5).margin(1e-5));
}

TEST_CASE("quadrature oracle: exact vs approx kernel cost is measured") {
    const auto stats = rssk::composite_stats(144, kKappa3dB);
    double worst = 0.0;
    for (double snr_db : {-19.0, -15.0, -10.0, 0.0, 10.0, 40.0}) {
        const auto p = params_for(std::pow(10.0, snr_db / 10.0), 0.1, 144);
        const double regime = p.rho * p.zeta * p.zeta * stats.sigma_sq / (2.0 * p.noise_inflation());
        if (regime < 1.0) continue;
        const double exact = rssk::upep_quadrature(p, stats, rssk::QKind::exact);
        const double approx = rssk::upep_quadrature(p, stats, rssk::QKind::approx);
        const double gap = std::abs(approx - exact) / exact;
        INFO("snr " << snr_db << " dB, regime " << regime << ": rel gap " << gap);
        worst = std::max(worst, gap);
    }
    INFO("max rel gap in the high-argument regime: " << worst);
    CHECK(worst < 0.20);  // measured ~0.17 near the regime boundary, ~0.01 deep in the floor
}

TEST_CASE("asymptotic upep") {
    SECTION("matches the closed form at rho = 1e12") {
        for (int L : {64, 144, 256}) {
            for (double kappa : {0.0, kKappa3dB}) {
                for (double se2 : {0.1, 1.0, 3.0}) {
                    const auto stats = rssk::composite_stats(L, kappa);
                    const double cf =
                        rssk::upep_closed_form(params_for(1e12, se2, L), stats);
                    const double asym = rssk::upep_asymptotic(L, kappa, se2);
                    CHECK(asym == Approx(cf).epsilon(1e-4));
                }
            }
        }
    }

    SECTION("closed form converges to the limit form") {
        const auto stats = rssk::composite_stats(144, kKappa3dB);
        const double limit = rssk::upep_asymptotic(144, kKappa3dB, 0.1);
        double prev_diff = 1e300;
        for (double rho : {1e6, 1e9, 1e12}) {
            const double diff =
                std::abs(rssk::upep_closed_form(params_for(rho, 0.1, 144), stats) - limit);
            CHECK((diff < prev_diff || diff == 0.0));
            prev_diff = diff;
        }
    }

    SECTION("monotone decreasing in L") {
        double prev = 1.0;
        for (int L : {64, 144, 256}) {
            const double v = rssk::upep_asymptotic(L, kKappa3dB, 0.1);
            CHECK(v < prev);
            prev = v;
        }
    }

    SECTION("perfect estimation has no floor") {
        CHECK_THROWS_AS(rssk::upep_asymptotic(144, kKappa3dB, 0.0), std::domain_error);
    }

    SECTION("alternate form halves the second exponent denominator") {
        const double limit = rssk::upep_asymptotic(144, kKappa3dB, 0.1, rssk::AsymptoticForm::limit);
        const double alt = rssk::upep_asymptotic(144, kKappa3dB, 0.1, rssk::AsymptoticForm::alt);
        INFO("limit " << limit << " vs alt " << alt << " (ratio " << limit / alt << ")");
        CHECK(limit > alt);  // the halved denominator suppresses the second term
        CHECK(limit / alt == Approx(3.274).epsilon(0.01));
    }

    SECTION("with perfect CSI the closed form keeps falling") {
        const auto stats = rssk::composite_stats(144, kKappa3dB);
        double prev = 1.0;
        for (double rho : {1e2, 1e4, 1e6, 1e8}) {
            const double v = rssk::upep_closed_form(params_for(rho, 0.0, 144), stats);
            CHECK(v < prev);
            prev = v;
        }
        CHECK(prev < 1e-20);
    }
}

TEST_CASE("abep union bound") {
    CHECK(rssk::abep_union_bound(0.01, 2) == Approx(0.01).epsilon(1e-15));
    CHECK(rssk::abep_union_bound(0.01, 4) == Approx(0.04).epsilon(1e-15));
    CHECK(rssk::abep_union_bound(0.01, 8) == Approx(0.16).epsilon(1e-15));
    CHECK(rssk::abep_union_bound(0.0, 16) == 0.0);
    CHECK_THROWS_AS(rssk::abep_union_bound(0.1, 3), std::domain_error);
    CHECK_THROWS_AS(rssk::abep_union_bound(0.1, 1), std::domain_error);
    CHECK_THROWS_AS(rssk::abep_union_bound(0.1, 0), std::domain_error);
    CHECK_THROWS_AS(rssk::abep_union_bound(1.5, 2), std::domain_error);
    CHECK_THROWS_AS(rssk::abep_union_bound(-0.1, 2), std::domain_error);
}
