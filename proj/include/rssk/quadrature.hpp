#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace rssk {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae and weights).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kGk15Nodes[i]);
        fv[14 - i] = f(c + h * kGk15Nodes[i]);
    }
    fv[7] = f(c);
    double kronrod = kGk15WeightsK[7] * fv[7];
    double gauss = kGk15WeightsG[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kGk15WeightsK[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kGk15WeightsG[i / 2] * (fv[i] + fv[14 - i]);
    }
    value = kronrod * h;
    // QUADPACK-style rescaling: |K - G| alone is overoptimistic when the
    // integrand structure is not yet resolved, so measure it against the
    // variation of f around its mean on the segment.
    const double mean = 0.5 * kronrod;
    double resasc = kGk15WeightsK[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kGk15WeightsK[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resasc *= std::abs(h);
    double err = std::abs((kronrod - gauss) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    error = err;
}

struct QuadSegment {
    double a, b, value, error;
    bool operator<(const QuadSegment& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b].
// Bisects the segment with the largest error estimate until the accumulated
// error satisfies max(abs_tol, rel_tol * |integral|) or the segment budget
// runs out (converged = false in that case).
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                           double abs_tol = 0.0, int max_segments = 2000) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    // Seed with a uniform subdivision so localized features are sampled
    // before the error-driven refinement starts.
    const int initial = std::clamp(max_segments, 1, 15);
    std::priority_queue<detail::QuadSegment> segments;
    double total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < initial; ++i) {
        detail::QuadSegment seg{a + (b - a) * i / initial, a + (b - a) * (i + 1) / initial, 0.0,
                                0.0};
        detail::gk15(f, seg.a, seg.b, seg.value, seg.error);
        res.evaluations += 15;
        total += seg.value;
        total_err += seg.error;
        segments.push(seg);
    }
    int n = initial;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_segments) {
        detail::QuadSegment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // cannot split further
            segments.push(worst);
            break;
        }
        detail::QuadSegment left{worst.a, mid, 0.0, 0.0};
        detail::QuadSegment right{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
        ++n;
    }
    res.value = total;
    res.error = total_err;
    res.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

// Same, but with caller-supplied interior breakpoints (e.g. known peak
// locations of a spiky integrand). Each sub-range is integrated adaptively.
template <typename F>
QuadratureResult integrate_with_breakpoints(F&& f, double a, double b,
                                            std::vector<double> breakpoints,
                                            double rel_tol = 1e-10, double abs_tol = 0.0,
                                            int max_segments_per_range = 2000) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    breakpoints.erase(
        std::remove_if(breakpoints.begin(), breakpoints.end(),
                       [&](double x) { return x < a || x > b; }),
        breakpoints.end());

    QuadratureResult res;
    // First pass to estimate the overall magnitude, then refine each range
    // against a shared absolute floor so relative accuracy is global.
    std::vector<QuadratureResult> parts(breakpoints.size() - 1);
    double magnitude = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        parts[i] = integrate(f, breakpoints[i], breakpoints[i + 1], rel_tol, abs_tol,
                             max_segments_per_range);
        magnitude += std::abs(parts[i].value);
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double floor = std::max(abs_tol, 0.25 * rel_tol * magnitude);
        if (!parts[i].converged && parts[i].error > floor) {
            parts[i] = integrate(f, breakpoints[i], breakpoints[i + 1], rel_tol, floor,
                                 4 * max_segments_per_range);
        }
        res.value += parts[i].value;
        res.error += parts[i].error;
        res.evaluations += parts[i].evaluations;
    }
    res.converged = res.error <= std::max({abs_tol, rel_tol * std::abs(res.value),
                                           0.5 * rel_tol * magnitude});
    return res;
}

}  // namespace rssk
