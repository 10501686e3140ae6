#pragma once

#include "chl/field.hpp"

namespace chl {

/// Lᵖ norm by lattice quadrature: (Σ|f|ᵖ·(L/n)^d)^{1/p}.  Pass
/// p = std::numeric_limits<double>::infinity() for the max norm.
/// Throws BadExponent for p < 1.
double lp_norm(const RealField& f, double p);

/// Fourier-side L¹ mass: Σ over the lattice of |coeff| times the spectral
/// cell measure (2π/L)^d.  For a classical-normalized spectrum this is the
/// quadrature of ∫|f̂(ξ)|dξ and is stable under grid refinement.
double l1_norm_spectral(const SpectralField& F);

/// Spectral-side L² sum: Σ|coeff|²·(2π/L)^d/(2π)^d = Σ|coeff|²/L^d.
/// Discrete Parseval makes this equal to lp_norm(f,2)² exactly.
double spectral_l2_sq(const SpectralField& F);

/// Enforce coeff(−k) = conj(coeff(k)) by averaging with the reflected
/// conjugate (projection onto spectra of real fields).
SpectralField hermitian_symmetrize(const SpectralField& F);

/// Smallest real part over all coefficients (positivity monitoring).
double min_real_coeff(const SpectralField& F);

/// Largest |coeff| over the lattice.
double max_abs_coeff(const SpectralField& F);

/// Largest |Im coeff| over the lattice (even real data should keep this 0).
double max_imag_coeff(const SpectralField& F);

} // namespace chl
