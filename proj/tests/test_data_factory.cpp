/// @file test_data_factory.cpp
/// @brief Constructed data: bumps, oscillating shells, heat kernels, scaling.
///
/// PURPOSE: every datum the laboratory feeds into a solver or certifier is
/// built here, so this suite pins the constructions to properties they must
/// have by design rather than by accident:
///
///   1. bump spectra are even, nonnegative, compactly supported
///   2. the N-shell datum has disjoint shells, a nonnegative spectrum, and
///      its dyadic blocks reproduce isolated shells exactly (k ≥ 3)
///   3. shell-mode Besov values agree with the full grid evaluation
///   4. the summability dichotomy in q shows up numerically
///   5. heat kernels have unit mass and the exact spectral multiplier
///   6. parabolic rescaling is an exact lattice operation
///
/// The N = 16 grid construction runs on a 2^20-point line; this is the one
/// deliberately heavy case (a few seconds).

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "chl/data_factory.hpp"
#include "chl/errors.hpp"
#include "chl/fft.hpp"
#include "chl/field_ops.hpp"
#include "chl/littlewood_paley.hpp"

using namespace chl;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t nonzero_count(const SpectralField& F) {
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < F.coeffs.size(); ++i)
        if (std::abs(F.coeffs[i]) != 0.0) ++c;
    return c;
}

/// Composite Simpson on [a, b].
template <class F>
double simpson(F f, double a, double b, int panels) {
    double acc = f(a) + f(b);
    const double h = (b - a) / (2 * panels);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_SUITE("data_factory") {

TEST_CASE("prefactors have the documented values") {
    CHECK_THROWS_AS(epsilon_N(2), NTooSmall);
    CHECK(epsilon_N(16) == doctest::Approx(0.980602274416971).epsilon(1e-12));
    CHECK(epsilon_N(100) == doctest::Approx(0.654801821017606).epsilon(1e-12));
    CHECK(eta_k(1) == 1.0);
    CHECK(eta_k(8) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(eta_k(0), OutOfRange);
}

TEST_CASE("bump spectrum is even, nonnegative and compactly supported") {
    Grid g(1, 512, 16.0 * kPi);
    BumpSpec spec; // ball of radius 1/6 around +1/6, evenized
    SpectralField F = bump_spectrum(spec, g);

    CHECK(min_real_coeff(F) >= 0.0);
    CHECK(max_imag_coeff(F) == 0.0);
    CHECK(max_abs_coeff(F) > 0.0);
    for (int k = 1; k < g.n / 2; ++k) { // evenness: coeff(−ξ) == coeff(ξ)
        CHECK(std::abs(F.coeffs[k] - F.coeffs[g.n - k]) <= 1e-15);
    }
    for (int k = 0; k < g.n; ++k) { // support: |ξ| < 1/3
        if (std::abs(g.xi(k)) >= 1.0 / 3.0) CHECK(std::abs(F.coeffs[k]) == 0.0);
    }

    RealField w = build_bump(spec, g);
    CHECK(w.values[0] == doctest::Approx(w.values.maxCoeff()).epsilon(1e-12));
}

TEST_CASE("bump resolution failures throw") {
    SUBCASE("too few lattice modes in the ball") {
        BumpSpec tiny;
        tiny.radius = 0.01; // no modes of the 1/8-spaced lattice inside
        CHECK_THROWS_AS(bump_spectrum(tiny, Grid(1, 512, 16.0 * kPi)), ResolutionError);
    }
    SUBCASE("ball sticks out past Nyquist") {
        BumpSpec far;
        far.center[0] = 31.9; // nyquist(n = 64, L = 2π) = 32
        CHECK_THROWS_AS(bump_spectrum(far, Grid(1, 64, 2.0 * kPi)), ResolutionError);
    }
    SUBCASE("bad parameters") {
        BumpSpec bad;
        bad.radius = -1.0;
        CHECK_THROWS_AS(bump_spectrum(bad, Grid(1, 512, 16.0 * kPi)), ConfigError);
    }
}

TEST_CASE("spectral l1 mass of the bump matches an independent quadrature") {
    // On L = 256π the spectral lattice spacing is 1/128, fine enough that the
    // lattice sum converges; the oracle integrates the two profile balls with
    // composite Simpson.
    Grid g(1, 8192, 256.0 * kPi);
    BumpSpec spec;
    const double mass = l1_norm_spectral(bump_spectrum(spec, g));
    auto ball = [&](double x) {
        const double d = x - spec.center[0];
        const double r2 = spec.radius * spec.radius;
        return d * d < r2 ? std::exp(-r2 / (r2 - d * d)) : 0.0;
    };
    const double oracle = simpson(ball, 0.0, 1.0 / 3.0, 4000); // one ball; evenized total is the same
    CHECK(mass == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("oscillating spectrum shells sit at 2^k - 1") {
    Grid g(1, 512, 16.0 * kPi);
    SpectralField F = oscillating_spectrum({3}, BumpSpec{}, g);
    // content only in |ξ ∓ 7| < 1/3
    for (int k = 0; k < g.n; ++k) {
        const double xi = std::abs(g.xi(k));
        if (std::abs(xi - 7.0) >= 1.0 / 3.0 + 1e-12) CHECK(std::abs(F.coeffs[k]) == 0.0);
    }
    CHECK(min_real_coeff(F) >= 0.0);
    CHECK_THROWS_AS(oscillating_spectrum({}, BumpSpec{}, g), ConfigError);
    CHECK_THROWS_AS(oscillating_spectrum({0}, BumpSpec{}, g), OutOfRange);
    CHECK_THROWS_AS(oscillating_spectrum({9}, BumpSpec{}, g), ResolutionError); // 511 > nyquist
}

TEST_CASE("oscillating datum on the full grid" * doctest::timeout(120)) {
    OscillatingDatumSpec spec; // N = 16
    CHECK_THROWS_AS(u0N_spectrum(OscillatingDatumSpec{8, BumpSpec{}}, Grid(1, 1 << 20, 16.0 * kPi)),
                    NTooSmall);
    CHECK_THROWS_AS(u0N_spectrum(OscillatingDatumSpec{17, BumpSpec{}}, Grid(1, 1 << 20, 16.0 * kPi)),
                    ResolutionError); // shell 2^17 − 1 exceeds Nyquist

    Grid g(1, 1 << 20, 16.0 * kPi);
    SpectralField U = u0N_spectrum(spec, g);

    // (a) nonnegative spectrum
    CHECK(min_real_coeff(U) >= 0.0);

    // (b) shells are disjoint and additive: the nonzero slots of the sum
    // count exactly the per-shell totals, and the coefficients agree
    const double eps = epsilon_N(spec.N);
    std::int64_t shell_slots = 0;
    ArrayXc rebuilt = ArrayXc::Zero(g.size());
    for (int k = 1; k <= spec.N; ++k) {
        SpectralField Sk = oscillating_spectrum({k}, spec.bump, g, eps);
        shell_slots += nonzero_count(Sk);
        rebuilt += Sk.coeffs;
    }
    CHECK(nonzero_count(U) == shell_slots);
    CHECK((U.coeffs - rebuilt).abs().maxCoeff() <= 1e-15 * max_abs_coeff(U));

    // (c) for k ≥ 3 the dyadic block at j = k reproduces the isolated shell
    for (int k : {3, 10, 16}) {
        SpectralField Sk = oscillating_spectrum({k}, spec.bump, g, eps);
        SpectralField Bk = lp_block(U, k);
        CHECK((Bk.coeffs - Sk.coeffs).abs().maxCoeff() <= 1e-12 * max_abs_coeff(Sk));
    }

    // (d) the grid L⁹ norm of one block matches the shell-mode closed form:
    // the k-th piece is ε·2^{2k/3}·η_k·w(x)cos((2^k−1)x₁) exactly on the
    // lattice, because the shift is a lattice translation.
    {
        const int k = 5;
        const double freq = std::ldexp(1.0, k) - 1.0;
        RealField blk = dft_inverse_unchecked(lp_block(U, k));
        const double grid_norm = lp_norm(blk, 9.0);
        const double closed = eps * std::exp2(2.0 * k / 3.0) * eta_k(k) *
                              bump_cosine_lp(spec.bump, g, freq, 9.0);
        CHECK(grid_norm == doctest::Approx(closed).epsilon(1e-10));
    }

    // (e) full grid Besov norm against the shell-mode assembly
    RealField u = dft_inverse(U);
    const double grid_besov = besov_norm(u, -2.0 / 3.0, 9.0, 3.0).total;
    const double shell_besov = shell_besov_u0N(spec.N, spec.bump, g, -2.0 / 3.0, 9.0, 3.0).value;
    // the lowest shells (frequencies 1 and 3) straddle two dyadic blocks
    // each, and the l^3 aggregate over split blocks exceeds the single-shell
    // value, so the grid norm runs ~18% hot; the band brackets that honestly
    CHECK(grid_besov / shell_besov > 0.9);
    CHECK(grid_besov / shell_besov < 1.3);
}

TEST_CASE("shell-mode dichotomy in the summation exponent") {
    Grid ref(1, 512, 16.0 * kPi);
    BumpSpec bump;
    const double s = -2.0 / 3.0;

    // limit envelope factor ‖w‖₉·c₉^{1/9}
    const double f_inf = lp_norm(build_bump(bump, ref), 9.0) *
                         std::pow(cosine_mean_power(9.0), 1.0 / 9.0);

    std::vector<int> sizes = {100, 1000, 10000, 100000};
    std::vector<double> v3, v6, scaled3;
    for (int N : sizes) {
        ShellBesovReport r3 = shell_besov_u0N(N, bump, ref, s, 9.0, 3.0);
        ShellBesovReport r6 = shell_besov_u0N(N, bump, ref, s, 9.0, 6.0);
        v3.push_back(r3.value);
        v6.push_back(r6.value);
        scaled3.push_back(r3.value / r3.epsilon); // strips the ε_N decay
        // sup mode equals the largest weighted entry
        ShellBesovReport ri = shell_besov_u0N(N, bump, ref, s, 9.0, kInf);
        double mx = 0.0;
        for (double wgt : ri.weighted) mx = std::max(mx, wgt);
        CHECK(ri.value == doctest::Approx(mx).epsilon(1e-15));
    }

    // q = 6: the weighted series converges, so the value decays with ε_N.
    for (std::size_t i = 1; i < v6.size(); ++i) CHECK(v6[i] < v6[i - 1]);

    // q = 3: the stripped series diverges like (log N)^{1/3}.
    CHECK(scaled3.back() / scaled3.front() > 1.2);
    for (std::size_t i = 1; i < scaled3.size(); ++i) CHECK(scaled3[i] > scaled3[i - 1]);

    // and the value itself tracks ε_N (log N)^{1/3} times the envelope factor.
    const double pred = epsilon_N(100000) * std::cbrt(std::log(100000.0)) * f_inf;
    CHECK(v3.back() / pred > 0.9);
    CHECK(v3.back() / pred < 1.1);
}

TEST_CASE("cosine mean power matches quadrature") {
    CHECK(cosine_mean_power(2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cosine_mean_power(9.0) == doctest::Approx(0.258689939247779).epsilon(1e-12));
    for (double p : {1.0, 4.0, 9.0}) {
        auto f = [p](double x) { return std::pow(std::abs(std::cos(x)), p); };
        const double oracle = simpson(f, 0.0, 2.0 * kPi, 20000) / (2.0 * kPi);
        CHECK(cosine_mean_power(p) == doctest::Approx(oracle).epsilon(1e-9));
    }
    CHECK_THROWS_AS(cosine_mean_power(-1.0), BadExponent);
}

TEST_CASE("bump cosine norm is continuous across the resolvability seam") {
    Grid ref(1, 4096, 16.0 * kPi); // nyquist = 256, seam at freq = 128
    BumpSpec bump;
    const double before = bump_cosine_lp(bump, ref, 127.0, 9.0);
    const double limit = bump_cosine_lp(bump, ref, 1e9, 9.0);
    CHECK(before / limit > 0.99);
    CHECK(before / limit < 1.01);
}

TEST_CASE("heat kernel has unit mass and the exact multiplier") {
    SUBCASE("d = 1") {
        Grid g(1, 512, 16.0 * kPi);
        RealField G = gaussian(0.25, g);
        CHECK(std::abs(G.values.sum() * g.cell_volume() - 1.0) <= 1e-8);
        SpectralField Ghat = dft_forward(G);
        auto ksq = g.wavenumber_sq();
        double worst = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(Ghat.coeffs[i] - Complex(std::exp(-0.25 * ksq[i]), 0)));
        CHECK(worst <= 1e-8);
    }
    SUBCASE("d = 3") {
        Grid g(3, 64, 16.0 * kPi);
        RealField G = gaussian(2.0, g);
        CHECK(std::abs(G.values.sum() * g.cell_volume() - 1.0) <= 1e-8);
        SpectralField Ghat = dft_forward(G);
        auto ksq = g.wavenumber_sq();
        double worst = 0.0;
        for (std::int64_t i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(Ghat.coeffs[i] - Complex(std::exp(-2.0 * ksq[i]), 0)));
        CHECK(worst <= 1e-8);
    }
    SUBCASE("kernels compose under convolution") {
        Grid g(1, 512, 16.0 * kPi);
        SpectralField Fs = dft_forward(gaussian(0.1, g));
        SpectralField Ft = dft_forward(gaussian(0.15, g));
        RealField conv = dft_inverse_unchecked(SpectralField(g, Fs.coeffs * Ft.coeffs));
        RealField direct = gaussian(0.25, g);
        CHECK((conv.values - direct.values).abs().maxCoeff() <= 1e-8);
    }
    SUBCASE("failure modes") {
        CHECK_THROWS_AS(gaussian(0.0, Grid(1, 512, 16.0 * kPi)), NonPositive);
        CHECK_THROWS_AS(gaussian(0.1, Grid(3, 64, 16.0 * kPi)), ResolutionError);
    }
}

TEST_CASE("parabolic rescaling is exact on the lattice") {
    Grid g(3, 16, 8.0 * kPi);
    RealField f = dft_inverse(random_band_limited(g, 3, 20260815ull, 0.3));

    CHECK_THROWS_AS(scale_datum(f, 3.0), IncompatibleLambda);
    CHECK_THROWS_AS(scale_datum(f, 0.0), IncompatibleLambda);

    RealField same = scale_datum(f, 1.0);
    CHECK(same.grid == g);
    CHECK((same.values == f.values).all());

    RealField half = scale_datum(f, 2.0);
    CHECK(half.grid.L == doctest::Approx(g.L / 2).epsilon(1e-15));
    // L³ is the invariant norm of the scaling: λ‖f(λ·)‖₃ has ‖·‖₃ unchanged
    CHECK(lp_norm(half, 3.0) == doctest::Approx(lp_norm(f, 3.0)).epsilon(1e-12));

    RealField quarter = scale_datum(scale_datum(f, 2.0), 2.0);
    RealField direct = scale_datum(f, 4.0);
    CHECK(quarter.grid == direct.grid);
    CHECK((quarter.values - direct.values).abs().maxCoeff() <= 1e-15 * f.values.abs().maxCoeff());
}

TEST_CASE("caloric proxy is invariant under the parabolic rescaling") {
    Grid g(3, 32, 8.0 * kPi);
    RealField f = dft_inverse(random_band_limited(g, 3, 77ull, 0.2));
    RealField f2 = scale_datum(f, 2.0);

    std::vector<double> ts, ts4;
    for (int i = 0; i <= 12; ++i) {
        const double t = std::pow(10.0, -2.0 + 4.0 * i / 12.0);
        ts.push_back(t);
        ts4.push_back(t / 4.0); // parabolic time map for λ = 2
    }
    const double a = caloric_characterization(f, 6.0, ts);
    const double b = caloric_characterization(f2, 6.0, ts4);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("random band-limited spectra are deterministic and band-limited") {
    Grid g(2, 32, 2.0 * kPi);
    SpectralField A = random_band_limited(g, 4, 42ull);
    SpectralField B = random_band_limited(g, 4, 42ull);
    SpectralField C = random_band_limited(g, 4, 43ull);
    CHECK((A.coeffs == B.coeffs).all());
    CHECK((A.coeffs - C.coeffs).abs().maxCoeff() > 0.0);

    int slots[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, slots);
        const bool in_band = std::abs(g.signed_index(slots[0])) <= 4 &&
                             std::abs(g.signed_index(slots[1])) <= 4;
        if (!in_band) CHECK(std::abs(A.coeffs[i]) == 0.0);
    }
    CHECK_NOTHROW(dft_inverse(A)); // Hermitian by construction
    CHECK_THROWS_AS(random_band_limited(g, 16, 1ull), OutOfRange);
}

} // TEST_SUITE
