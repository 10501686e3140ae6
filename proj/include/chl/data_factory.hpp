#pragma once

#include <cstdint>
#include <vector>

#include "chl/field.hpp"

namespace chl {

/// Recipe for a smooth compactly supported Fourier bump.  The spectrum is
/// b(ξ) = exp(−r²/(r² − |ξ−c|²)) inside B_r(c), zero outside; with
/// `evenize` the construction is symmetrized, ŵ(ξ) = (b(ξ) + b(−ξ))/2, so
/// the physical field is real and its spectrum is even and nonnegative.
struct BumpSpec {
    double center[3] = {1.0 / 6.0, 0.0, 0.0}; ///< ball center (first `dim` entries used)
    double radius = 1.0 / 6.0;                ///< ball radius, > 0
    double amplitude = 1.0;                   ///< scalar multiplier on the spectrum
    bool evenize = true;
};

/// Oscillating-datum recipe: û = ε_N Σ_{k=1..N} 2^{2k/3} η_k ·
/// ½(ŵ(ξ−(2^k−1)e₁) + ŵ(ξ+(2^k−1)e₁)) with η_k = k^{−1/3} and
/// ε_N = 1/log(log N).
struct OscillatingDatumSpec {
    int N = 16;       ///< number of shells, ≥ 16
    BumpSpec bump;    ///< base bump (shifted copies populate the shells)
};

/// ε_N = 1/log(log N).  Positive and finite for N ≥ 3; throws NTooSmall below.
double epsilon_N(int N);

/// η_k = k^{−1/3} for k ≥ 1; throws OutOfRange otherwise.
double eta_k(int k);

/// Evaluate the (optionally evenized) bump spectrum at one frequency point.
double bump_value(const BumpSpec& spec, const double* xi, int dim);

/// Sample the bump spectrum on the grid's frequency lattice.
/// Throws ResolutionError if the support ball (after evenization) does not fit
/// under the per-axis Nyquist frequency or covers fewer than 2^dim lattice
/// modes (the minimum for a non-degenerate quadrature of the ball).
SpectralField bump_spectrum(const BumpSpec& spec, const Grid& grid);

/// Physical-space bump field (real; spectrum even and ≥ 0).
RealField build_bump(const BumpSpec& spec, const Grid& grid);

/// Spectrum of the oscillating datum: shifted bump copies on shells
/// 2^k − 1, k = 1..N.  Requires N ≥ 16 (NTooSmall) and the top shell plus
/// bump support to fit under Nyquist (ResolutionError).
SpectralField u0N_spectrum(const OscillatingDatumSpec& spec, const Grid& grid);

/// Physical-space oscillating datum ε_N Σ 2^{2k/3} η_k cos((2^k−1)x₁)·w(x).
RealField build_u0N(const OscillatingDatumSpec& spec, const Grid& grid);

/// Same construction with the shell range [1, N] replaced by an explicit
/// list of shell exponents k (frequencies 2^k − 1) and no ε_N prefactor;
/// used for modest band-limited relatives of the oscillating family on
/// grids that cannot hold the full 16-shell datum.
SpectralField oscillating_spectrum(const std::vector<int>& shells,
                                   const BumpSpec& bump, const Grid& grid,
                                   double prefactor = 1.0);

/// Per-shell data for the analytic ("shell mode") evaluation of the
/// homogeneous Besov norms of the oscillating datum, usable for N far beyond
/// any grid: ‖Δ_k u_{0,N}‖_p = ε_N 2^{2k/3} η_k ‖w(x)cos((2^k−1)x₁)‖_p,
/// with the last factor measured on a reference grid while the oscillation
/// is resolvable and replaced by its mean-field limit ‖w‖_p·c_p^{1/p}
/// (c_p the mean of |cos|^p) beyond.
struct ShellBesovReport {
    int N = 0;
    double s = 0.0;      ///< regularity index (−2/3 in the main family)
    double p = 9.0;      ///< Lebesgue exponent
    double q = 3.0;      ///< summation exponent
    double epsilon = 0.0;       ///< ε_N
    std::vector<double> shell_norms;  ///< ‖Δ_k u‖_p, k = 1..N
    std::vector<double> weighted;     ///< 2^{sk}·shell_norms[k−1]
    double value = 0.0;  ///< (Σ weighted^q)^{1/q} (sup for q = ∞)
};

/// Analytic shell-mode Besov norm of the N-shell oscillating datum.
/// `ref` only needs to resolve the bump itself, not the shells.  Accepts any
/// N ≥ 3 (the evaluation is closed-form; only the buildable datum itself is
/// restricted to N ≥ 16).
ShellBesovReport shell_besov_u0N(int N, const BumpSpec& bump, const Grid& ref,
                                 double s, double p, double q);

/// ‖w(x)·cos(freq·x₁)‖_p: grid quadrature while `freq` stays under half the
/// Nyquist frequency of `ref`, the oscillatory mean-value limit beyond.
double bump_cosine_lp(const BumpSpec& bump, const Grid& ref, double freq, double p);

/// Mean of |cos|^p over a period (the limit constant c_p above).
double cosine_mean_power(double p);

/// Periodized heat kernel with unit mass, sampled in physical space by
/// summing Gaussian images (4πt)^{−d/2} e^{−|x+mL|²/4t} adaptively.
/// Throws NonPositive for t ≤ 0 and ResolutionError when the kernel is too
/// narrow for the lattice (spectral tail at Nyquist above 1e−9).
RealField gaussian(double t, const Grid& grid);

/// Parabolic rescaling λ·f(λx) on the box of edge L/λ (same sample count);
/// λ must be a power of two (IncompatibleLambda otherwise).
RealField scale_datum(const RealField& f, double lambda);

/// Random Hermitian spectrum supported on per-axis integer wavenumbers
/// |k| ≤ kmax, coefficients i.i.d. complex normal scaled by `amplitude`.
/// Deterministic for a fixed seed.
SpectralField random_band_limited(const Grid& grid, int kmax,
                                  std::uint64_t seed, double amplitude = 1.0);

} // namespace chl
