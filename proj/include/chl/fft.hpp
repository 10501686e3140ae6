#pragma once

#include "chl/field.hpp"

namespace chl {

/// Forward transform of real samples.  Coefficients use the classical box
/// normalization coeff(ξ_k) = (L/n)^d Σ_m f_m e^{−iξ_k·x_m}; see SpectralField.
SpectralField dft_forward(const RealField& f);

/// Inverse transform.  Checks Hermitian symmetry of the input (coeff(−k) must
/// equal conj(coeff(k)) to 1e−10 relative) and throws SymmetryViolation if the
/// coefficients cannot have come from a real field.
RealField dft_inverse(const SpectralField& F);

/// Inverse transform without the symmetry gate (for padded intermediates and
/// diagnostics where the caller already knows the spectrum is Hermitian).
RealField dft_inverse_unchecked(const SpectralField& F);

/// Zero-embed a spectrum onto the grid with `factor`× the modes per axis
/// (same box).  Per-axis Nyquist content is split evenly between ±n/2 so that
/// Hermitian spectra stay Hermitian.  Coefficients are grid-count free, so no
/// rescaling is involved.
SpectralField pad_spectrum(const SpectralField& F, int factor = 2);

/// Restrict a fine spectrum back onto the n-per-axis grid (adjoint of
/// pad_spectrum: the two ±Nyquist slots fold back onto one).
SpectralField truncate_spectrum(const SpectralField& F, int n_coarse);

/// Pointwise triple product computed alias-free: each factor is zero-padded
/// by 2× per axis, multiplied on the fine physical lattice, transformed back
/// and truncated.  The retained coefficients equal the exact spectral triple
/// convolution of the inputs.
SpectralField triple_product_dealiased(const SpectralField& A,
                                       const SpectralField& B,
                                       const SpectralField& C);

/// u ↦ u³ through the padded pipeline (spectral in/out).  The physical field
/// is taken real, so the input spectrum must be Hermitian-symmetric.
SpectralField cube_dealiased(const SpectralField& F);

/// u ↦ u³ for physical-space callers.
RealField cube_dealiased(const RealField& f);

/// u ↦ u³ with the physical field kept complex: the result is the exact
/// spectral triple self-convolution for spectra with no symmetry, e.g. the
/// one-sided bumps of the convolution-chain certificates.
SpectralField cube_dealiased_complex(const SpectralField& F);

} // namespace chl
