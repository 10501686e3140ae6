#pragma once

#include <cstdint>
#include <vector>

#include "chl/field.hpp"
#include "chl/time_grid.hpp"

namespace chl {

/// C = B(1 − 3/p, 1 − 3σ/2), σ = 1 − 3/p: the exact constant in
/// ∫₀^t (t−τ)^{−3/p} τ^{−3σ/2} dτ = C·t^{−σ/2}.  Throws ExponentOutOfRange
/// outside (3, 9); both Beta arguments hit 0 at the endpoints, so a 1e−3
/// margin is enforced there.
double beta_constant(double p);

/// Smallness threshold η = (2/(3√3))·C₀^{−1/2}.  Throws NonPositive.
double eta_threshold(double C0);

/// Contraction-ball radius (1/√3)·C₀^{−1/2} that the fixed point lands in.
double picard_ball(double C0);

/// sup over nodes of τ_i^{σ/2}·‖x_i‖_{L^p} for a time-indexed spectral
/// trajectory sampled on `tg` (σ = 1 − 3/p from tg).
double y_norm(const std::vector<SpectralField>& x, const TimeGrid& tg);

/// sup over nodes of ‖x_i‖_{L³}.
double sup_l3(const std::vector<SpectralField>& x);

/// e^{τ_i Δ} f at every node of `tg`.
std::vector<SpectralField> caloric_series(const SpectralField& f, const TimeGrid& tg);

/// Discrete Duhamel trilinear operator
///   Γ(u₁,u₂,u₃)(t_i) = ∫₀^{t_i} e^{(t_i−τ)Δ}(u₁u₂u₃)(τ) dτ,
/// evaluated with the product-integration weights of `tg` on the alias-free
/// triple product.  All inputs must be sampled on the same grid and on
/// tg.nodes (GridMismatch otherwise).
std::vector<SpectralField> gamma_trilinear(const std::vector<SpectralField>& u1,
                                           const std::vector<SpectralField>& u2,
                                           const std::vector<SpectralField>& u3,
                                           const TimeGrid& tg);

struct PicardIterateRow {
    int iter = 0;
    double y_norm = 0.0;       ///< sup τ^{σ/2}‖x‖_p over nodes
    double strong_norm = 0.0;  ///< sup‖x‖_{L³} + y_norm
    double l3_norm = 0.0;      ///< sup‖x‖_{L³} over nodes
    double update_ratio = 0.0; ///< ‖x_n − x_{n−1}‖_Y / previous difference
};

enum class PicardVerdict { Converged, Diverged, Stalled };

struct PicardTrace {
    PicardVerdict verdict = PicardVerdict::Stalled;
    std::vector<PicardIterateRow> iterates;
    double final_y = 0.0;       ///< Y-norm of the last iterate
    double ball = 0.0;          ///< reference ball (1/√3)·C₀^{−1/2}, C₀ = beta_constant(p)
    double eta = 0.0;           ///< matching smallness threshold
    double p = 0.0;
    double sigma = 0.0;
    std::vector<SpectralField> solution; ///< last iterate at tg.nodes
};

/// Fixed-point iteration x_{n+1} = e^{tΔ}u₀ + Γ(x_n,x_n,x_n) on the nodes of
/// `tg`.  `p` must agree with tg.p (it fixes the Y-norm weight).  Converged
/// when the Y-norm of the update drops below tol; Diverged when the Y-norm
/// exceeds 10× the reference ball; Stalled at max_iter.
PicardTrace picard_iterate(const RealField& u0, const TimeGrid& tg, double p,
                           int max_iter = 40, double tol = 1e-10);

/// Y-norm of the fixed-point residual x − e^{tΔ}u₀ − Γ(x,x,x).
double picard_residual(const std::vector<SpectralField>& x, const RealField& u0,
                       const TimeGrid& tg);

/// Largest observed ‖Γ(u₁,u₂,u₃)‖_Y / ∏‖u_i‖_Y over `trials` random
/// band-limited caloric inputs: a measured stand-in for the trilinear
/// estimate's constant.  Deterministic per seed.
double measure_trilinear_constant(const Grid& grid, const TimeGrid& tg,
                                  std::uint64_t seed, int trials = 6,
                                  int kmax = 4);

} // namespace chl
