#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rssk/detector.hpp"
#include "rssk/rng.hpp"

using Catch::Approx;
using cplx = std::complex<double>;

namespace {

// independent scalar metric evaluation, no std::norm
int brute_force(cplx y, double scale, const std::vector<double>& gains) {
    int best = 0;
    double best_m = 1e300;
    for (std::size_t n = 0; n < gains.size(); ++n) {
        const double re = y.real() - scale * gains[n];
        const double im = y.imag();
        const double m = re * re + im * im;
        if (m < best_m) {
            best_m = m;
            best = static_cast<int>(n);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("exact-match candidate wins") {
    rssk::DetectionInput in;
    in.zeta = 0.9;
    in.sqrt_ps = 2.0;
    in.candidate_gains = {1.0, 2.5, 4.0, 7.0};
    for (int k = 0; k < 4; ++k) {
        in.y = in.sqrt_ps * in.zeta * in.candidate_gains[static_cast<std::size_t>(k)];
        CHECK(rssk::ml_detect(in) == k);
    }
}

TEST_CASE("ties break toward the smallest index") {
    rssk::DetectionInput in;
    in.y = {3.0, 0.0};
    in.candidate_gains = {5.0, 5.0, 5.0};
    CHECK(rssk::ml_detect(in) == 0);
    in.candidate_gains = {1.0, 5.0, 5.0};
    in.y = {5.0, 0.0};
    CHECK(rssk::ml_detect(in) == 1);
}

TEST_CASE("empty candidate list is rejected") {
    rssk::DetectionInput in;
    CHECK_THROWS_AS(rssk::ml_detect(in), std::invalid_argument);
}

TEST_CASE("random instances match the brute-force oracle") {
    rssk::Xoshiro256pp rng(22001);
    for (int trial = 0; trial < 1000; ++trial) {
        rssk::DetectionInput in;
        in.y = {4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        in.zeta = 0.5 + 0.5 * rng.uniform01();
        in.sqrt_ps = 0.1 + 3.0 * rng.uniform01();
        in.candidate_gains.resize(4);
        for (auto& g : in.candidate_gains) g = 3.0 * rng.uniform01();
        CHECK(rssk::ml_detect(in) ==
              brute_force(in.y, in.sqrt_ps * in.zeta, in.candidate_gains));
    }
}

TEST_CASE("decision is invariant to exact common scaling") {
    rssk::Xoshiro256pp rng(22002);
    for (int trial = 0; trial < 200; ++trial) {
        rssk::DetectionInput in;
        in.y = {4.0 * rng.uniform01() - 2.0, rng.uniform01()};
        in.zeta = 0.9;
        in.sqrt_ps = 1.3;
        in.candidate_gains = {rng.uniform01(), rng.uniform01(), rng.uniform01(),
                              rng.uniform01()};
        const int base = rssk::ml_detect(in);
        for (double c : {0.25, 0.5, 2.0, 1024.0}) {  // powers of two scale exactly
            rssk::DetectionInput scaled = in;
            scaled.y *= c;
            scaled.sqrt_ps *= c;
            CHECK(rssk::ml_detect(scaled) == base);
        }
    }
}

TEST_CASE("noiseless quantized small instances always detect the sent index") {
    // exhaustive L <= 4, n_t = 2 grid channels: with distinct aligned gains the
    // zero-residual candidate is the unique minimum
    const double grid[] = {0.25, 0.5, 1.0, 1.5};
    for (double a0 : grid)
        for (double a1 : grid)
            for (double b : grid) {
                const double g0 = 4.0 * a0 * b;  // L = 4 equal elements
                const double g1 = 4.0 * a1 * b;
                rssk::DetectionInput in;
                in.zeta = 1.0;
                in.sqrt_ps = 1.0;
                in.candidate_gains = {g0, g1};
                for (int sent = 0; sent < 2; ++sent) {
                    in.y = in.candidate_gains[static_cast<std::size_t>(sent)];
                    const int detected = rssk::ml_detect(in);
                    CHECK(detected == brute_force(in.y, 1.0, in.candidate_gains));
                    if (g0 != g1) CHECK(detected == sent);
                }
            }
}

TEST_CASE("complex-anchor overload agrees with the real version") {
    rssk::Xoshiro256pp rng(22003);
    for (int trial = 0; trial < 200; ++trial) {
        rssk::DetectionInput in;
        in.y = {rng.uniform01(), rng.uniform01()};
        in.zeta = 0.8;
        in.sqrt_ps = 2.0;
        in.candidate_gains = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
        std::vector<cplx> anchors(in.candidate_gains.begin(), in.candidate_gains.end());
        CHECK(rssk::ml_detect(in) ==
              rssk::ml_detect(in.y, in.sqrt_ps * in.zeta, std::span<const cplx>(anchors)));
    }
    // and the complex residual matters: an anchor matching y exactly wins
    std::vector<cplx> anchors = {cplx{1.0, 1.0}, cplx{1.0, -1.0}, cplx{0.5, 0.2}};
    CHECK(rssk::ml_detect(cplx{2.0, -2.0}, 2.0, std::span<const cplx>(anchors)) == 1);
}

TEST_CASE("operation counts") {
    const auto r144 = rssk::complexity(144, 2);
    CHECK(r144.real_multiplications == 296);
    CHECK(r144.real_additions == 290);
    const auto r1 = rssk::complexity(1, 2);
    CHECK(r1.real_multiplications == 10);
    CHECK(r1.real_additions == 4);
    const auto r256 = rssk::complexity(256, 4);
    CHECK(r256.real_multiplications == 1040);
    CHECK(r256.real_additions == 1028);
    CHECK_THROWS_AS(rssk::complexity(0, 2), std::domain_error);
    CHECK_THROWS_AS(rssk::complexity(16, 1), std::domain_error);
}
