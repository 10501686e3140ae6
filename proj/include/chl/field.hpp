#pragma once

#include <complex>

#include <Eigen/Dense>

#include "chl/grid.hpp"

namespace chl {

using Real = double;
using Complex = std::complex<double>;
using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

/// Real-valued samples on the physical lattice of a Grid (row-major flat).
struct RealField {
    Grid grid;
    ArrayXr values;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), values(ArrayXr::Zero(g.size())) {}
    RealField(const Grid& g, ArrayXr v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size()) throw GridMismatch("RealField: value count does not match grid");
    }
};

/// Spectral coefficients on the frequency lattice of a Grid, DFT slot order.
///
/// Normalization is the classical transform of the box:
///     coeff(ξ_k) = ∫_{[0,L)^d} f(x) e^{−i ξ_k·x} dx   (≈ (L/n)^d Σ_m f_m e^{−iξ_k·x_m})
/// so coefficients approximate the continuum Fourier transform on [0,L)^d and
/// are stable under grid refinement.  For real fields the array is
/// Hermitian-symmetric: coeff(−k) = conj(coeff(k)).
struct SpectralField {
    Grid grid;
    ArrayXc coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coeffs(ArrayXc::Zero(g.size())) {}
    SpectralField(const Grid& g, ArrayXc c) : grid(g), coeffs(std::move(c)) {
        if (coeffs.size() != grid.size()) throw GridMismatch("SpectralField: coeff count does not match grid");
    }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* who) {
    if (a != b) throw GridMismatch(std::string(who) + ": fields live on different grids");
}

} // namespace chl
