#pragma once

#include <Eigen/Dense>

#include <vector>

#include "chl/errors.hpp"

namespace chl {

/// Graded time mesh with product-integration weights for Duhamel-type
/// integrals whose integrand behaves like τ^{−β} at the origin, β = 3σ/2,
/// σ = 1 − 3/p.
///
/// Nodes: τ_i = t_end·(i/M)^γ, i = 1..M.  The quadrature interpolates the
/// weighted integrand g(τ) = τ^{β} f(τ) piecewise-linearly (constant on the
/// first cell), which makes ∫₀^{τ_i} f dτ exact for the pure power
/// f = τ^{−β}.  The same machinery integrates against an additional kernel
/// (τ_i−τ)^{−a} for the scalar singular checks.
struct TimeGrid {
    double t_end = 1.0;
    int M = 32;
    double gamma = 4.0;
    double p = 6.0;
    double sigma = 0.5;   ///< 1 − 3/p
    double beta = 0.75;   ///< 3σ/2, the modeled origin singularity
    std::vector<double> nodes;   ///< τ_1..τ_M (τ_M = t_end)
    Eigen::MatrixXd w0;          ///< w0(i,j): weights for ∫₀^{τ_{i+1}} f dτ ≈ Σ_j w0(i,j) f(τ_{j+1})

    /// ∫₀^{τ_i} (τ_i−τ)^{−a} τ^{−b} dτ evaluated by singularity-splitting
    /// Gauss quadrature (i is 1-based; a < 1, b < 1).
    double singular_integral(double a, double b, int i) const;
};

/// Build the mesh and its weights.  Requires t_end > 0, M ≥ 4, γ ≥ 1 and
/// p ∈ (3, 9).
TimeGrid make_time_grid(double t_end, int M, double gamma, double p);

} // namespace chl
