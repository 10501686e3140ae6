#pragma once

#include <utility>
#include <vector>

#include "chl/field.hpp"

namespace chl {

/// Radial low-pass profile χ: identically 1 for |ξ| ≤ 3/5, supported in
/// {|ξ| ≤ 5/6}, glued with the C^∞ step built from e^{−1/x}.
double smooth_cutoff(double r);

/// Dyadic shell profile ψ̂(ξ) = χ(ξ/2) − χ(ξ); supported in 3/5 ≤ |ξ| ≤ 5/3
/// and ≡ 1 on 5/6 ≤ |ξ| ≤ 6/5.  The dilates telescope:
/// Σ_{j=j0}^{J} ψ̂(2^{−j}ξ) = χ(2^{−J−1}ξ) − χ(2^{−j0}ξ).
double shell_profile(double r);

/// Range of dyadic shells resolvable on a grid: shells below the box's
/// fundamental frequency or above the lattice corner are dropped.
struct DyadicPartition {
    Grid grid;
    int j_min = 0;
    int j_max = 0;
    int count() const { return j_max - j_min + 1; }
};

/// Throws GridTooCoarse when fewer than 3 shells fit.
DyadicPartition build_partition(const Grid& g);

/// Frequency-localized piece Δ_j f: multiplier ψ̂(2^{−j}|ξ|) on the spectrum.
SpectralField lp_block(const SpectralField& F, int j);

/// One line per shell of a Besov norm evaluation.
struct BesovReport {
    double s = 0, p = 2, q = 2;
    int j_min = 0, j_max = 0;
    bool shell_model = false; ///< true when assembled from closed forms, not a grid
    std::vector<std::pair<int, double>> blocks; ///< (j, ‖Δ_j f‖_p)
    double total = 0;
};

/// Homogeneous Besov norm (Σ_j (2^{js}‖Δ_j f‖_p)^q)^{1/q} over the resolvable
/// shells; q may be +infinity (sup over shells).  p ≥ 1, q ≥ 1.
BesovReport besov_norm(const RealField& f, double s, double p, double q);

/// Heat-semigroup proxy for the Ḃ^{−σ,∞}_p norm with σ = 1 − 3/p (the native
/// three-dimensional exponent, applied verbatim in analog dimensions):
/// sup over the samples of t^{σ/2}‖e^{tΔ}f‖_p.  Samples must be positive and
/// span at least three decades.
double caloric_characterization(const RealField& f, double p,
                                const std::vector<double>& t_samples);

} // namespace chl
