#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "rssk/quadrature.hpp"

using Catch::Approx;

TEST_CASE("polynomial and gaussian integrals") {
    auto poly = rssk::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    REQUIRE(poly.converged);
    CHECK(poly.value == Approx(1.0 / 3.0).epsilon(1e-13));

    auto gauss = rssk::integrate(
        [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }, -9.0,
        9.0, 1e-12);
    REQUIRE(gauss.converged);
    CHECK(gauss.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("relative control keeps accuracy on tiny magnitudes") {
    // a gaussian bump of mass ~1e-30 spread over a wide interval
    auto res = rssk::integrate(
        [](double x) { return 1e-30 * std::exp(-0.5 * (x - 3.0) * (x - 3.0)); }, -15.0, 50.0,
        1e-10, 0.0, 4000);
    REQUIRE(res.converged);
    CHECK(res.value == Approx(1e-30 * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("breakpoints rescue a spike the first pass would miss") {
    // spike of width 1e-3 at x = 0.01 inside [0, 300]
    auto f = [](double x) {
        const double t = (x - 0.01) / 1e-3;
        return std::exp(-0.5 * t * t);
    };
    auto with = rssk::integrate_with_breakpoints(f, 0.0, 300.0, {0.005, 0.01, 0.02}, 1e-10);
    REQUIRE(with.converged);
    CHECK(with.value == Approx(1e-3 * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-8));
}

TEST_CASE("segment budget exhaustion is reported, not hidden") {
    // slowly-decaying peak: visible everywhere, needs far more than 4 segments
    auto runge = [](double x) { return 1e-5 / (1e-10 + (x - 0.37) * (x - 0.37)); };
    auto starved = rssk::integrate(runge, 0.0, 1.0, 1e-10, 0.0, 4);
    CHECK_FALSE(starved.converged);
    auto full = rssk::integrate(runge, 0.0, 1.0, 1e-10, 0.0, 4000);
    REQUIRE(full.converged);
    const double expected = std::atan(0.63 / 1e-5) + std::atan(0.37 / 1e-5);
    CHECK(full.value == Approx(expected).epsilon(1e-9));
}

TEST_CASE("empty range integrates to zero") {
    auto res = rssk::integrate([](double x) { return x; }, 2.0, 2.0);
    CHECK(res.converged);
    CHECK(res.value == 0.0);
}
