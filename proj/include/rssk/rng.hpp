#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace rssk {

// splitmix64 finalizer; good avalanche, used for seeding and stream derivation
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and up to two indices.
// The result depends only on (base, a, b), never on which thread asks,
// so chunked Monte Carlo runs are reproducible for any worker count.
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                           std::uint64_t b = 0) noexcept {
    std::uint64_t h = mix64(base + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (a + 0xD1B54A32D192ED03ull));
    h = mix64(h ^ (b + 0x8CB92BA72F3D8DD7ull));
    return h;
}

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bit-reproducible across platforms and standard libraries; normal variates
// come from the Marsaglia polar method rather than std::normal_distribution,
// whose output sequence is implementation-defined.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ull;
            word = mix64(s);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n) for n a power of two (exact, no modulo bias)
    std::uint32_t uniform_pow2(std::uint32_t n) noexcept {
        return static_cast<std::uint32_t>(next() & (n - 1));
    }

    // standard normal, Marsaglia polar method with cached spare
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    // circularly symmetric complex normal CN(0, 1)
    std::complex<double> cnormal() noexcept {
        constexpr double inv_sqrt2 = 0.7071067811865475244;
        const double re = normal();
        const double im = normal();
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rssk
