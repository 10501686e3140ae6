#include "chl/data_factory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "chl/errors.hpp"
#include "chl/fft.hpp"
#include "chl/field_ops.hpp"

namespace chl {

namespace {

// one-sided bump profile at squared distance `d2` from the ball center
double profile(double d2, double r) {
    const double r2 = r * r;
    if (!(d2 < r2)) return 0.0;
    return std::exp(-r2 / (r2 - d2));
}

// require the ball B_r(c) to live strictly inside the representable
// frequency box of `grid` (every supported mode is a signed lattice point)
void check_ball_fits(const double* c, double r, const Grid& grid, const char* who) {
    const double limit = grid.nyquist() - 0.5 * grid.dxi();
    for (int a = 0; a < grid.dim; ++a)
        if (std::abs(c[a]) + r >= limit)
            throw ResolutionError(std::string(who) +
                                  ": bump support does not fit under the grid's Nyquist frequency");
}

// count lattice modes strictly inside B_r(c)
std::int64_t modes_inside(const double* c, double r, const Grid& grid) {
    const double dxi = grid.dxi();
    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) {
        lo[a] = static_cast<int>(std::ceil((c[a] - r) / dxi));
        hi[a] = static_cast<int>(std::floor((c[a] + r) / dxi));
    }
    std::int64_t count = 0;
    int m[3] = {0, 0, 0};
    for (m[0] = lo[0]; m[0] <= hi[0]; ++m[0])
        for (m[1] = lo[1]; m[1] <= hi[1]; ++m[1])
            for (m[2] = lo[2]; m[2] <= hi[2]; ++m[2]) {
                double d2 = 0.0;
                for (int a = 0; a < grid.dim; ++a) {
                    const double d = m[a] * dxi - c[a];
                    d2 += d * d;
                }
                if (d2 < r * r) ++count;
            }
    return count;
}

// add weight·profile(|ξ−c|) over the lattice ball around one center
void add_ball(SpectralField& F, const double* c, double r, double weight) {
    const Grid& grid = F.grid;
    const double dxi = grid.dxi();
    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int a = 0; a < grid.dim; ++a) {
        lo[a] = static_cast<int>(std::ceil((c[a] - r) / dxi));
        hi[a] = static_cast<int>(std::floor((c[a] + r) / dxi));
    }
    int m[3] = {0, 0, 0};
    for (m[0] = lo[0]; m[0] <= hi[0]; ++m[0])
        for (m[1] = lo[1]; m[1] <= hi[1]; ++m[1])
            for (m[2] = lo[2]; m[2] <= hi[2]; ++m[2]) {
                double d2 = 0.0;
                for (int a = 0; a < grid.dim; ++a) {
                    const double d = m[a] * dxi - c[a];
                    d2 += d * d;
                }
                const double v = profile(d2, r);
                if (v == 0.0) continue;
                int slots[3];
                for (int a = 0; a < grid.dim; ++a)
                    slots[a] = m[a] >= 0 ? m[a] : m[a] + grid.n;
                F.coeffs(grid.flatten(slots)) += weight * v;
            }
}

void validate_bump(const BumpSpec& spec) {
    if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
        throw NonPositive("BumpSpec: radius must be positive");
    if (!std::isfinite(spec.amplitude))
        throw ConfigError("BumpSpec: amplitude must be finite");
    for (double c : spec.center)
        if (!std::isfinite(c)) throw ConfigError("BumpSpec: center must be finite");
}

} // namespace

double epsilon_N(int N) {
    if (N < 3) throw NTooSmall("epsilon_N: need N >= 3 so that log(log N) > 0");
    return 1.0 / std::log(std::log(static_cast<double>(N)));
}

double eta_k(int k) {
    if (k < 1) throw OutOfRange("eta_k: shell index must be >= 1");
    return std::pow(static_cast<double>(k), -1.0 / 3.0);
}

double bump_value(const BumpSpec& spec, const double* xi, int dim) {
    double d2p = 0.0, d2m = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double dp = xi[a] - spec.center[a];
        const double dm = xi[a] + spec.center[a];
        d2p += dp * dp;
        d2m += dm * dm;
    }
    const double bp = profile(d2p, spec.radius);
    if (!spec.evenize) return spec.amplitude * bp;
    return 0.5 * spec.amplitude * (bp + profile(d2m, spec.radius));
}

SpectralField bump_spectrum(const BumpSpec& spec, const Grid& grid) {
    validate_bump(spec);
    check_ball_fits(spec.center, spec.radius, grid, "bump_spectrum");
    if (modes_inside(spec.center, spec.radius, grid) < (std::int64_t{1} << grid.dim))
        throw ResolutionError("bump_spectrum: fewer than 2^dim lattice modes inside the support ball");

    SpectralField F(grid);
    if (spec.evenize) {
        double neg[3];
        for (int a = 0; a < 3; ++a) neg[a] = -spec.center[a];
        add_ball(F, spec.center, spec.radius, 0.5 * spec.amplitude);
        add_ball(F, neg, spec.radius, 0.5 * spec.amplitude);
    } else {
        add_ball(F, spec.center, spec.radius, spec.amplitude);
    }
    return F;
}

RealField build_bump(const BumpSpec& spec, const Grid& grid) {
    return dft_inverse(bump_spectrum(spec, grid));
}

SpectralField oscillating_spectrum(const std::vector<int>& shells,
                                   const BumpSpec& bump, const Grid& grid,
                                   double prefactor) {
    validate_bump(bump);
    if (shells.empty()) throw ConfigError("oscillating_spectrum: shell list is empty");
    if (modes_inside(bump.center, bump.radius, grid) < (std::int64_t{1} << grid.dim))
        throw ResolutionError("oscillating_spectrum: fewer than 2^dim lattice modes inside the bump ball");

    SpectralField F(grid);
    const double half = 0.5 * prefactor;
    for (int k : shells) {
        if (k < 1 || k > 62) throw OutOfRange("oscillating_spectrum: shell exponent out of range");
        const double s = std::ldexp(1.0, k) - 1.0;
        const double wk = half * std::exp2(2.0 * k / 3.0) * eta_k(k);
        // ½(ŵ(ξ−s e₁) + ŵ(ξ+s e₁)) with ŵ the evenized bump: up to four balls
        const int sides = bump.evenize ? 2 : 1;
        for (int shift_sign = -1; shift_sign <= 1; shift_sign += 2) {
            for (int side = 0; side < sides; ++side) {
                const double csign = side == 0 ? 1.0 : -1.0;
                double c[3] = {shift_sign * s + csign * bump.center[0],
                               csign * bump.center[1], csign * bump.center[2]};
                check_ball_fits(c, bump.radius, grid, "oscillating_spectrum");
                add_ball(F, c, bump.radius, wk * bump.amplitude / sides);
            }
        }
    }
    return F;
}

SpectralField u0N_spectrum(const OscillatingDatumSpec& spec, const Grid& grid) {
    if (spec.N < 16) throw NTooSmall("u0N_spectrum: the oscillating datum needs N >= 16");
    std::vector<int> shells(static_cast<std::size_t>(spec.N));
    for (int k = 1; k <= spec.N; ++k) shells[static_cast<std::size_t>(k - 1)] = k;
    return oscillating_spectrum(shells, spec.bump, grid, epsilon_N(spec.N));
}

RealField build_u0N(const OscillatingDatumSpec& spec, const Grid& grid) {
    return dft_inverse(u0N_spectrum(spec, grid));
}

double cosine_mean_power(double p) {
    if (!(p >= 0.0) || !std::isfinite(p))
        throw BadExponent("cosine_mean_power: p must be finite and nonnegative");
    return std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0)) /
           std::sqrt(std::numbers::pi);
}

double bump_cosine_lp(const BumpSpec& bump, const Grid& ref, double freq, double p) {
    RealField w = build_bump(bump, ref);
    if (!(freq < 0.5 * ref.nyquist())) {
        // oscillation unresolvable: |cos|^p averages out against the envelope
        return lp_norm(w, p) * std::pow(cosine_mean_power(p), 1.0 / p);
    }
    const double dx = ref.dx();
    const std::int64_t lead = ref.size() / ref.n; // stride of the x₁ axis
    for (std::int64_t f = 0; f < ref.size(); ++f) {
        const double x1 = static_cast<double>(f / lead) * dx;
        w.values(f) *= std::cos(freq * x1);
    }
    return lp_norm(w, p);
}

ShellBesovReport shell_besov_u0N(int N, const BumpSpec& bump, const Grid& ref,
                                 double s, double p, double q) {
    if (N < 3) throw NTooSmall("shell_besov_u0N: need N >= 3 so that epsilon_N is positive");
    if (!(q >= 1.0)) throw BadExponent("shell_besov_u0N: q must be >= 1 (or infinity)");

    ShellBesovReport rep;
    rep.N = N;
    rep.s = s;
    rep.p = p;
    rep.q = q;
    rep.epsilon = epsilon_N(N);
    rep.shell_norms.resize(static_cast<std::size_t>(N));
    rep.weighted.resize(static_cast<std::size_t>(N));

    // The envelope norm ‖w·cos(freq·x₁)‖_p only depends on freq while the
    // oscillation is resolvable — a handful of small k.  Build the bump once
    // and reuse the mean-value limit for every unresolvable shell.
    const RealField w = build_bump(bump, ref);
    const double limit_fac = lp_norm(w, p) * std::pow(cosine_mean_power(p), 1.0 / p);
    const double dx = ref.dx();
    const std::int64_t lead = ref.size() / ref.n;
    auto resolved_fac = [&](double freq) {
        RealField wc = w;
        for (std::int64_t f = 0; f < ref.size(); ++f)
            wc.values(f) *= std::cos(freq * (static_cast<double>(f / lead) * dx));
        return lp_norm(wc, p);
    };

    const bool sup_mode = std::isinf(q);
    double acc = 0.0, sup = 0.0;
    for (int k = 1; k <= N; ++k) {
        const double freq = std::ldexp(1.0, k) - 1.0;
        const double fac = freq < 0.5 * ref.nyquist() ? resolved_fac(freq) : limit_fac;
        const double shell = rep.epsilon * std::exp2(2.0 * k / 3.0) * eta_k(k) * fac;
        // weighted = 2^{sk}·shell; the 2^{±2k/3} factors cancel analytically
        // at s = −2/3, so combine exponents before exponentiating
        const double weighted = rep.epsilon * std::exp2((s + 2.0 / 3.0) * k) * eta_k(k) * fac;
        rep.shell_norms[static_cast<std::size_t>(k - 1)] = shell;
        rep.weighted[static_cast<std::size_t>(k - 1)] = weighted;
        if (sup_mode)
            sup = std::max(sup, weighted);
        else
            acc += std::pow(weighted, q);
    }
    rep.value = sup_mode ? sup : std::pow(acc, 1.0 / q);
    return rep;
}

RealField gaussian(double t, const Grid& grid) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw NonPositive("gaussian: time must be positive and finite");
    const double nyq = grid.nyquist();
    if (t * nyq * nyq < 9.0 * std::numbers::ln10)
        throw ResolutionError("gaussian: kernel too narrow for this grid (spectral tail at "
                              "Nyquist above 1e-9)");

    // one-axis periodized kernel; the d-dimensional kernel is its tensor product
    const int n = grid.n;
    const double L = grid.L, dx = grid.dx();
    const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
    const int m_max = static_cast<int>(std::ceil(std::sqrt(204.0 * t) / L)) + 1;
    ArrayXr g1(n);
    for (int i = 0; i < n; ++i) {
        const double x = i * dx;
        double acc = 0.0;
        for (int m = -m_max; m <= m_max; ++m) {
            const double y = x + m * L;
            acc += std::exp(-y * y / (4.0 * t));
        }
        g1(i) = norm * acc;
    }

    RealField out(grid);
    int slots[3];
    for (std::int64_t f = 0; f < grid.size(); ++f) {
        grid.unflatten(f, slots);
        double v = 1.0;
        for (int a = 0; a < grid.dim; ++a) v *= g1(slots[a]);
        out.values(f) = v;
    }
    return out;
}

RealField scale_datum(const RealField& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw IncompatibleLambda("scale_datum: lambda must be positive and finite");
    const double m = std::round(std::log2(lambda));
    if (std::abs(lambda - std::exp2(m)) > 1e-12 * lambda)
        throw IncompatibleLambda("scale_datum: lambda must be a power of two");
    // samples of λ·f(λx) on the box L/λ coincide with λ·(existing samples)
    Grid scaled(f.grid.dim, f.grid.n, f.grid.L / lambda);
    return RealField(scaled, lambda * f.values);
}

SpectralField random_band_limited(const Grid& grid, int kmax,
                                  std::uint64_t seed, double amplitude) {
    if (kmax < 0 || kmax >= grid.n / 2)
        throw OutOfRange("random_band_limited: kmax must sit in [0, n/2)");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);

    SpectralField F(grid);
    int slots[3];
    for (std::int64_t f = 0; f < grid.size(); ++f) {
        grid.unflatten(f, slots);
        bool in_band = true;
        for (int a = 0; a < grid.dim; ++a)
            in_band = in_band && std::abs(grid.signed_index(slots[a])) <= kmax;
        if (!in_band) continue;
        const double re = nd(rng), im = nd(rng);
        F.coeffs(f) = Complex(re, im);
    }
    F = hermitian_symmetrize(F);
    F.coeffs *= amplitude;
    return F;
}

} // namespace chl
