//============================================================================
// Adaptive pseudospectral marching for u_t = Δu + u³.
//
// The stepper is an integrating-factor Heun scheme: with E = e^{dtΔ} and
// N(u) = (u³)^ computed alias-free,
//     u_pred = E (u + dt·N(u))
//     u_next = E u + (dt/2)(E·N(u) + N(u_pred))
// The linear flow is exact, and every term is a nonnegative combination of
// semigroup multipliers and spectral convolutions, so coefficientwise
// nonnegativity of û propagates step to step.  The corrector-predictor gap
// serves as the local error estimate for step control.
//============================================================================

#include "chl/semigroup.hpp"

#include <cmath>
#include <fstream>

#include "chl/fft.hpp"
#include "chl/field_ops.hpp"

namespace chl {

void SolverConfig::validate() const {
    if (!(t_end > 0.0)) throw ConfigError("SolverConfig: t_end must be positive");
    if (!(dt_init > 0.0)) throw ConfigError("SolverConfig: dt_init must be positive");
    if (!(safety > 0.0 && safety < 1.0)) throw ConfigError("SolverConfig: safety must sit in (0,1)");
    if (!(amplitude_cap > 0.0)) throw ConfigError("SolverConfig: amplitude_cap must be positive");
    if (!(track_p > 3.0 && track_p < 9.0)) throw ConfigError("SolverConfig: track_p must sit in (3,9)");
    if (dt_min < 0.0) throw ConfigError("SolverConfig: dt_min must be >= 0");
    if (max_steps < 1) throw ConfigError("SolverConfig: max_steps must be >= 1");
    if (diag_stride < 1) throw ConfigError("SolverConfig: diag_stride must be >= 1");
}

SpectralField heat_propagate(const SpectralField& F, double t) {
    if (t < 0.0) throw NegativeTime("heat_propagate: t must be >= 0");
    if (t == 0.0) return F;
    std::vector<double> ksq = F.grid.wavenumber_sq();
    SpectralField out(F.grid);
    for (std::int64_t i = 0; i < F.grid.size(); ++i)
        out.coeffs[i] = F.coeffs[i] * std::exp(-t * ksq[i]);
    return out;
}

namespace {

//--- (1) stepping core -------------------------------------------------------

struct Stepper {
    Grid grid;
    ArrayXr ksq;      // |ξ|² per slot
    bool cubic;

    explicit Stepper(const Grid& g, bool cubic_) : grid(g), cubic(cubic_) {
        std::vector<double> k = g.wavenumber_sq();
        ksq = Eigen::Map<ArrayXr>(k.data(), static_cast<Eigen::Index>(k.size()));
    }

    // advance by dt; err_rel reports the corrector-predictor gap
    ArrayXc step(const ArrayXc& u, double dt, double* err_rel) const {
        const ArrayXr E = (-dt * ksq).exp();
        if (!cubic) {
            if (err_rel) *err_rel = 0.0;
            return u * E.cast<Complex>();
        }
        SpectralField uh(grid, u);
        const ArrayXc N1 = cube_dealiased(uh).coeffs;
        const ArrayXc upred = E.cast<Complex>() * (u + dt * N1);
        const ArrayXc N2 = cube_dealiased(SpectralField(grid, upred)).coeffs;
        ArrayXc unext = E.cast<Complex>() * (u + (dt / 2.0) * N1) + (dt / 2.0) * N2;
        if (err_rel) {
            const double scale = unext.abs().maxCoeff();
            *err_rel = scale > 0 ? (unext - upred).abs().maxCoeff() / scale
                                 : 0.0;
        }
        return unext;
    }
};

double blowup_time_fit(const std::vector<DiagRow>& diag, double t_fallback) {
    // fit 1/‖u‖_∞² ≈ a − b·t over the last (up to) 10 rows with growing ‖u‖_∞;
    // the modeled divergence (T*−t)^{−1/2} vanishes at T* = a/b
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = diag.size() >= 10 ? diag.size() - 10 : 0; i < diag.size(); ++i)
        if (diag[i].linf > 0) pts.emplace_back(diag[i].t, 1.0 / (diag[i].linf * diag[i].linf));
    if (pts.size() < 3) return t_fallback;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return t_fallback;
    const double b = -(n * sxy - sx * sy) / denom; // slope of y against t is −b
    const double a = (sy + b * sx) / n;
    if (!(b > 0)) return t_fallback;
    const double t_star = a / b;
    return t_star >= t_fallback ? t_star : t_fallback;
}

} // namespace

SpectralField etd_step(const SpectralField& u, double dt, bool cubic) {
    if (!(dt > 0.0)) throw ConfigError("etd_step: dt must be positive");
    Stepper s(u.grid, cubic);
    return SpectralField(u.grid, s.step(u.coeffs, dt, nullptr));
}

SolveResult solve(const SpectralField& u0_hat, const SolverConfig& cfg) {
    cfg.validate();
    const Grid& g = u0_hat.grid;
    Stepper stepper(g, cfg.nonlinear);
    const double dt_min = cfg.dt_min > 0 ? cfg.dt_min : 1e-12 * cfg.t_end;
    const double sigma = 1.0 - 3.0 / cfg.track_p;

    SolveResult res;
    if (g.dim != 3) res.note = "analog mode (dim = " + std::to_string(g.dim) + ")";

    ArrayXc u = u0_hat.coeffs;
    double t = 0.0, dt = std::min(cfg.dt_init, cfg.t_end);
    double prev_linf = -1.0;

    auto record = [&](double used_dt) {
        SpectralField uh(g, u);
        RealField phys = dft_inverse_unchecked(uh);
        DiagRow row;
        row.t = t;
        row.l3 = lp_norm(phys, 3.0);
        row.linf = phys.values.abs().maxCoeff();
        row.weissler = std::pow(t, sigma / 2.0) * lp_norm(phys, cfg.track_p);
        row.min_spec = min_real_coeff(uh);
        row.max_spec = max_abs_coeff(uh);
        row.dt = used_dt;
        res.diagnostics.push_back(row);
        return row.linf;
    };

    prev_linf = record(0.0);

    long accepted = 0;
    while (t < cfg.t_end) {
        if (accepted >= cfg.max_steps)
            throw NumericalError("solve: max_steps exhausted before t_end");
        const double h = std::min(dt, cfg.t_end - t);
        double err = 0.0;
        ArrayXc unext = stepper.step(u, h, &err);

        const bool ok = std::isfinite(err) && unext.allFinite() &&
                        (cfg.fixed_dt || err <= cfg.safety);
        if (!ok) {
            dt = h / 2.0;
            if (dt < dt_min) {
                // dt underflow: blow-up if the norms were still climbing
                res.outcome = prev_linf > 0 && res.diagnostics.size() >= 2 &&
                              res.diagnostics.back().linf >
                                  res.diagnostics[res.diagnostics.size() - 2].linf * 0.999
                                  ? Outcome::Blowup : Outcome::Underresolved;
                res.t_final = t;
                res.t_star = res.outcome == Outcome::Blowup
                                 ? blowup_time_fit(res.diagnostics, t) : 0.0;
                res.final_state = SpectralField(g, std::move(u));
                res.steps = accepted;
                return res;
            }
            continue;
        }

        t += h;
        u = std::move(unext);
        if (cfg.symmetrize) u = hermitian_symmetrize(SpectralField(g, u)).coeffs;
        ++accepted;

        double linf = prev_linf;
        if (accepted % cfg.diag_stride == 0 || t >= cfg.t_end) linf = record(h);

        if (linf > cfg.amplitude_cap) {
            res.outcome = Outcome::Blowup;
            res.t_final = t;
            res.t_star = blowup_time_fit(res.diagnostics, t);
            res.final_state = SpectralField(g, std::move(u));
            res.steps = accepted;
            return res;
        }
        prev_linf = linf;

        if (!cfg.fixed_dt && err < cfg.safety / 16.0) dt = std::min(h * 1.5, cfg.t_end);
        else dt = h;
    }

    res.outcome = Outcome::Global;
    res.t_final = t;
    res.final_state = SpectralField(g, std::move(u));
    res.steps = accepted;
    return res;
}

SolveResult solve(const RealField& u0, const SolverConfig& cfg) {
    return solve(dft_forward(u0), cfg);
}

std::vector<std::pair<double, double>> weissler_trace(const SolveResult& r) {
    std::vector<std::pair<double, double>> out;
    out.reserve(r.diagnostics.size());
    for (const DiagRow& row : r.diagnostics)
        if (row.t > 0) out.emplace_back(row.t, row.weissler);
    return out;
}

double power_law_slope(const std::vector<std::pair<double, double>>& series) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (auto& [t, y] : series) {
        if (!(t > 0) || !(y > 0)) continue;
        const double x = std::log(t), ly = std::log(y);
        sx += x; sy += ly; sxx += x * x; sxy += x * ly;
        ++n;
    }
    if (n < 2) throw InsufficientSamples("power_law_slope: need two positive samples");
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw InsufficientSamples("power_law_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

void write_diagnostics_csv(const std::string& path, const SolveResult& r) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << "t,L3,Linf,weissler_p,min_spec,max_spec,dt\n";
    out.precision(17);
    for (const DiagRow& d : r.diagnostics)
        out << d.t << ',' << d.l3 << ',' << d.linf << ',' << d.weissler << ','
            << d.min_spec << ',' << d.max_spec << ',' << d.dt << '\n';
}

} // namespace chl
