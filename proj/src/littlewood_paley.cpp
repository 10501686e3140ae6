//============================================================================
// Dyadic frequency decomposition and the Besov / caloric norms built on it.
// The cutoff pair (χ, ψ̂) matches the support geometry used throughout the
// analysis: χ ≡ 1 up to 3/5, gone after 5/6; shells live on [3/5, 5/3].
//============================================================================

#include "chl/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chl/fft.hpp"
#include "chl/field_ops.hpp"
#include "chl/semigroup.hpp"

namespace chl {

namespace {

// C^∞ ramp: 0 for x ≤ 0, 1 for x ≥ 1.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

constexpr double kInner = 3.0 / 5.0; // χ ≡ 1 inside
constexpr double kOuter = 5.0 / 6.0; // χ ≡ 0 outside

} // namespace

double smooth_cutoff(double r) {
    r = std::abs(r);
    return 1.0 - smooth_step((r - kInner) / (kOuter - kInner));
}

double shell_profile(double r) { return smooth_cutoff(r / 2.0) - smooth_cutoff(r); }

DyadicPartition build_partition(const Grid& g) {
    // smallest shell whose support reaches the fundamental frequency,
    // largest whose support reaches the lattice corner
    const double xi_lo = g.dxi();
    const double xi_hi = std::sqrt(static_cast<double>(g.dim)) * g.nyquist();
    const int j_min = static_cast<int>(std::ceil(std::log2(xi_lo * 3.0 / 5.0)));
    const int j_max = static_cast<int>(std::floor(std::log2(xi_hi * 5.0 / 3.0)));
    if (j_max - j_min + 1 < 3)
        throw GridTooCoarse("build_partition: fewer than 3 dyadic shells fit on this grid");
    return DyadicPartition{g, j_min, j_max};
}

SpectralField lp_block(const SpectralField& F, int j) {
    const Grid& g = F.grid;
    const double scale = std::ldexp(1.0, -j); // 2^{-j}
    std::vector<double> ksq = g.wavenumber_sq();
    SpectralField out(g);
    for (std::int64_t i = 0; i < g.size(); ++i)
        out.coeffs[i] = F.coeffs[i] * shell_profile(scale * std::sqrt(ksq[i]));
    return out;
}

BesovReport besov_norm(const RealField& f, double s, double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw BadExponent("besov_norm: p, q must be >= 1");
    DyadicPartition part = build_partition(f.grid);
    SpectralField F = dft_forward(f);

    BesovReport rep;
    rep.s = s; rep.p = p; rep.q = q;
    rep.j_min = part.j_min; rep.j_max = part.j_max;

    double acc = 0.0, sup = 0.0;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        const double block_p = lp_norm(dft_inverse_unchecked(lp_block(F, j)), p);
        rep.blocks.emplace_back(j, block_p);
        const double term = std::pow(2.0, j * s) * block_p;
        if (std::isinf(q)) sup = std::max(sup, term);
        else acc += std::pow(term, q);
    }
    rep.total = std::isinf(q) ? sup : std::pow(acc, 1.0 / q);
    return rep;
}

double caloric_characterization(const RealField& f, double p,
                                const std::vector<double>& t_samples) {
    if (!(p > 3.0)) throw BadExponent("caloric_characterization: requires p > 3");
    if (t_samples.size() < 2)
        throw InsufficientSamples("caloric_characterization: need at least 2 samples");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double t : t_samples) {
        if (!(t > 0.0)) throw InsufficientSamples("caloric_characterization: samples must be positive");
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (hi / lo < 1e3)
        throw InsufficientSamples("caloric_characterization: samples must span >= 3 decades");

    const double sigma = 1.0 - 3.0 / p;
    SpectralField F = dft_forward(f);
    double sup = 0.0;
    for (double t : t_samples) {
        const double norm = lp_norm(dft_inverse_unchecked(heat_propagate(F, t)), p);
        sup = std::max(sup, std::pow(t, sigma / 2.0) * norm);
    }
    return sup;
}

} // namespace chl
