#pragma once

#include <string>
#include <vector>

#include "chl/field.hpp"

namespace chl {

/// Heat semigroup e^{tΔ} as the Fourier multiplier e^{−t|ξ|²}.
/// Throws NegativeTime for t < 0.
SpectralField heat_propagate(const SpectralField& F, double t);

/// One integrating-factor Heun step for u_t = Δu + u³ (the linear part is
/// applied exactly, so switching the cubic term off reproduces
/// heat_propagate(·, dt) to machine precision).  Every operation maps
/// nonnegative spectra to nonnegative spectra, which is what preserves the
/// Fourier-positivity cone along a run.
SpectralField etd_step(const SpectralField& u, double dt, bool cubic = true);

struct SolverConfig {
    double t_end = 1.0;
    double dt_init = 1e-3;
    double dt_min = 0.0;        ///< 0 → defaults to 1e-12·t_end
    double safety = 0.05;       ///< halve dt when the relative step error exceeds this
    double amplitude_cap = 1e8; ///< declare blow-up when ‖u‖_∞ passes this
    double track_p = 6.0;       ///< Weissler trace exponent, must sit in (3, 9)
    bool nonlinear = true;
    bool symmetrize = false;    ///< Hermitian projection after each accepted step
    int max_steps = 2000000;
    int diag_stride = 1;        ///< record diagnostics every k-th accepted step
    bool fixed_dt = false;      ///< disable adaptivity (comparison runs)

    void validate() const;
};

enum class Outcome { Global, Blowup, Underresolved };

/// One diagnostics row per recorded step.  min_spec/max_spec are the smallest
/// real part and largest magnitude over the spectral coefficients at time t,
/// so min_spec >= -tol*max_spec certifies sign preservation row by row.
struct DiagRow {
    double t, l3, linf, weissler, min_spec, max_spec, dt;
};

struct SolveResult {
    Outcome outcome = Outcome::Global;
    double t_final = 0.0;
    double t_star = 0.0;      ///< blow-up time estimate (Blowup only)
    long steps = 0;
    std::vector<DiagRow> diagnostics;
    SpectralField final_state;
    std::string note;         ///< e.g. "analog mode (dim = 1)"
};

/// March the mild solution from u0 with adaptive integrating-factor Heun
/// stepping.  Blow-up is declared when ‖u‖_∞ exceeds amplitude_cap, or when
/// dt underflows dt_min while the norms are still increasing; dt underflow
/// without norm growth yields Outcome::Underresolved.  The blow-up time
/// estimate extrapolates the (T*−t)^{−1/2}-type divergence (linear fit of
/// 1/‖u‖_∞² against t over the last recorded samples).
SolveResult solve(const RealField& u0, const SolverConfig& cfg);
SolveResult solve(const SpectralField& u0_hat, const SolverConfig& cfg);

/// (t, t^{σ/2}‖u(t)‖_p) series from a solve's diagnostics, σ = 1 − 3/p.
std::vector<std::pair<double, double>> weissler_trace(const SolveResult& r);

/// Least-squares slope of log y against log t (power-law fit helper).
double power_law_slope(const std::vector<std::pair<double, double>>& series);

/// Serialize diagnostics as CSV with header
/// t,L3,Linf,weissler_p,min_spec,max_spec,dt.
void write_diagnostics_csv(const std::string& path, const SolveResult& r);

} // namespace chl
