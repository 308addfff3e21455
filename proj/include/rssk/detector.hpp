#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace rssk {

// One detection problem: received sample plus the per-candidate composite
// gains (sums of magnitude products, real after phase alignment).
struct DetectionInput {
    std::complex<double> y;
    double zeta = 1.0;
    double sqrt_ps = 1.0;
    std::vector<double> candidate_gains;
};

struct ComplexityReport {
    long long real_multiplications;
    long long real_additions;
};

namespace detail {

template <typename Anchor>
int argmin_metric(std::complex<double> y, double scale, std::span<const Anchor> anchors) {
    if (anchors.empty()) throw std::invalid_argument("ml_detect: empty candidate list");
    int best = 0;
    double best_metric = std::norm(y - scale * std::complex<double>(anchors[0]));
    for (std::size_t n = 1; n < anchors.size(); ++n) {
        const double m = std::norm(y - scale * std::complex<double>(anchors[n]));
        if (m < best_metric) {  // ties keep the smallest index
            best_metric = m;
            best = static_cast<int>(n);
        }
    }
    return best;
}

}  // namespace detail

// argmin_n |y - sqrt(Ps) zeta c_n|^2 over complex candidate anchors.
inline int ml_detect(std::complex<double> y, double scale,
                     std::span<const std::complex<double>> anchors) {
    return detail::argmin_metric(y, scale, anchors);
}

// Same rule over real aligned gains.
inline int ml_detect(const DetectionInput& input) {
    return detail::argmin_metric(input.y, input.sqrt_ps * input.zeta,
                                 std::span<const double>(input.candidate_gains));
}

// Operation count of the detector: (L+4) n_t real multiplications and
// (L+1) n_t real additions.
inline ComplexityReport complexity(int L, int n_t) {
    if (L < 1 || n_t < 2) throw std::domain_error("complexity: requires L >= 1 and n_t >= 2");
    const long long ll = L, nn = n_t;
    return {(ll + 4) * nn, (ll + 1) * nn};
}

}  // namespace rssk
