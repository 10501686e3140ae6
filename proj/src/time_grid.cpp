//============================================================================
// Graded mesh + product-integration weights.
//
// For ∫₀^t f(τ)dτ with f ~ τ^{−β} near 0 we write f = τ^{−β} g and
// interpolate g linearly between nodes (constant before the first node).
// The cell integrals ∫ τ^{−β}·{1, τ} dτ have closed forms, so the weights
// are assembled exactly and the scheme reproduces pure powers f = τ^{−β}
// to rounding.
//
// The scalar variant with an extra kernel (t−τ)^{−a} is used to validate the
// Beta-function constant; there the cell integrals are computed by Gauss
// panels after substitutions that absorb the endpoint singularities.
//============================================================================

#include "chl/time_grid.hpp"

#include <cmath>

namespace chl {

namespace {

// 16-point Gauss–Legendre rule on [-1, 1]
constexpr int kGN = 16;
constexpr double kGX[kGN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
     0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
     0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGW[kGN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class Fn>
double gauss(double lo, double hi, Fn&& fn) {
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int q = 0; q < kGN; ++q) acc += kGW[q] * fn(c + h * kGX[q]);
    return acc * h;
}

// composite rule with panels shrinking geometrically toward `lo`, where the
// transformed integrands keep their residual roughness
template <class Fn>
double gauss_graded(double lo, double hi, Fn&& fn) {
    constexpr int kPanels = 8;
    double acc = 0.0, right = hi;
    for (int s = 0; s < kPanels - 1; ++s) {
        const double left = lo + (right - lo) * 0.25;
        acc += gauss(left, right, fn);
        right = left;
    }
    return acc + gauss(lo, right, fn);
}

// ∫_l^r (t−τ)^{−a} τ^{−b} dτ on a cell that may touch τ=0 or τ=t.
// Power substitutions flatten whichever endpoint is singular.
double cell_kernel_integral(double t, double a, double b, double l, double r) {
    auto raw = [&](double tau) { return std::pow(t - tau, -a) * std::pow(tau, -b); };
    const bool at_zero = l == 0.0 && b > 0.0;
    const bool at_t = r >= t * (1.0 - 1e-14) && a > 0.0;
    if (at_zero && at_t) {
        const double mid = 0.5 * (l + r);
        return cell_kernel_integral(t, a, b, l, mid) + cell_kernel_integral(t, a, b, mid, r);
    }
    if (at_zero) {
        // τ = y^{1/(1−b)}:  ∫ τ^{−b} h(τ) dτ = 1/(1−b) ∫ h(y^{1/(1−b)}) dy
        const double e = 1.0 - b;
        return gauss_graded(0.0, std::pow(r, e), [&](double y) {
            const double tau = std::pow(y, 1.0 / e);
            return std::pow(t - tau, -a);
        }) / e;
    }
    if (at_t) {
        // z = t−τ, z = y^{1/(1−a)}
        const double e = 1.0 - a;
        return gauss_graded(0.0, std::pow(t - l, e), [&](double y) {
            const double z = std::pow(y, 1.0 / e);
            return std::pow(t - z, -b);
        }) / e;
    }
    return gauss(l, r, raw);
}

} // namespace

TimeGrid make_time_grid(double t_end, int M, double gamma, double p) {
    if (!(t_end > 0.0)) throw ConfigError("make_time_grid: t_end must be positive");
    if (M < 4) throw ConfigError("make_time_grid: need at least 4 nodes");
    if (!(gamma >= 1.0)) throw ConfigError("make_time_grid: grading exponent must be >= 1");
    if (!(p > 3.0 && p < 9.0)) throw ExponentOutOfRange("make_time_grid: p must sit in (3, 9)");

    TimeGrid tg;
    tg.t_end = t_end;
    tg.M = M;
    tg.gamma = gamma;
    tg.p = p;
    tg.sigma = 1.0 - 3.0 / p;
    tg.beta = 1.5 * tg.sigma;

    tg.nodes.resize(M);
    for (int i = 1; i <= M; ++i)
        tg.nodes[i - 1] = t_end * std::pow(static_cast<double>(i) / M, gamma);

    // closed-form cell moments ∫_l^r τ^{−β}·{1, τ} dτ
    const double b = tg.beta;
    auto mom0 = [b](double l, double r) {
        return (std::pow(r, 1.0 - b) - std::pow(l, 1.0 - b)) / (1.0 - b);
    };
    auto mom1 = [b](double l, double r) {
        return (std::pow(r, 2.0 - b) - std::pow(l, 2.0 - b)) / (2.0 - b);
    };

    tg.w0 = Eigen::MatrixXd::Zero(M, M);
    for (int i = 0; i < M; ++i) {
        // cell [0, τ_1]: g constant at g(τ_1)
        tg.w0(i, 0) += std::pow(tg.nodes[0], b) * mom0(0.0, tg.nodes[0]);
        for (int j = 1; j <= i; ++j) {
            const double l = tg.nodes[j - 1], r = tg.nodes[j], h = r - l;
            const double m0 = mom0(l, r), m1 = mom1(l, r);
            // linear g on [l, r]: g(τ) = g_l (r−τ)/h + g_r (τ−l)/h
            tg.w0(i, j - 1) += std::pow(l, b) * (r * m0 - m1) / h;
            tg.w0(i, j)     += std::pow(r, b) * (m1 - l * m0) / h;
        }
    }
    return tg;
}

double TimeGrid::singular_integral(double a, double b, int i) const {
    if (i < 1 || i > M) throw OutOfRange("singular_integral: node index out of range");
    if (!(a < 1.0 && b < 1.0)) throw BadExponent("singular_integral: exponents must be < 1");
    const double t = nodes[i - 1];
    double acc = cell_kernel_integral(t, a, b, 0.0, nodes[0]);
    for (int j = 1; j < i; ++j)
        acc += cell_kernel_integral(t, a, b, nodes[j - 1], nodes[j]);
    return acc;
}

} // namespace chl
