#include "chl/field_ops.hpp"

#include <cmath>
#include <limits>

namespace chl {

double lp_norm(const RealField& f, double p) {
    if (!(p >= 1.0)) throw BadExponent("lp_norm: p must be >= 1");
    if (std::isinf(p)) return f.values.abs().maxCoeff();
    const double cell = f.grid.cell_volume();
    if (p == 2.0) return std::sqrt((f.values * f.values).sum() * cell);
    return std::pow((f.values.abs().pow(p)).sum() * cell, 1.0 / p);
}

double l1_norm_spectral(const SpectralField& F) {
    return F.coeffs.abs().sum() * F.grid.spectral_cell();
}

double spectral_l2_sq(const SpectralField& F) {
    return F.coeffs.abs2().sum() / std::pow(F.grid.L, F.grid.dim);
}

SpectralField hermitian_symmetrize(const SpectralField& F) {
    const Grid& g = F.grid;
    SpectralField out(g);
    int slots[3], rslots[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, slots);
        for (int a = 0; a < g.dim; ++a) rslots[a] = slots[a] == 0 ? 0 : g.n - slots[a];
        const std::int64_t r = g.flatten(rslots);
        out.coeffs[i] = 0.5 * (F.coeffs[i] + std::conj(F.coeffs[r]));
    }
    return out;
}

double min_real_coeff(const SpectralField& F) { return F.coeffs.real().minCoeff(); }

double max_abs_coeff(const SpectralField& F) { return F.coeffs.abs().maxCoeff(); }

double max_imag_coeff(const SpectralField& F) { return F.coeffs.imag().abs().maxCoeff(); }

} // namespace chl
