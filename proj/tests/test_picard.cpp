/// @file test_picard.cpp
/// @brief Graded time quadrature, the discrete trilinear operator, and the
///        fixed-point iteration.
///
/// PURPOSE: the iteration scheme is only as good as its quadrature, so the
/// suite pins the pieces to closed forms first:
///
///   1. product-integration weights integrate the modeled power τ^{−β} exactly
///   2. the singular kernel integral reproduces the Beta-function constant
///   3. the trilinear operator is symmetric, vanishes on zero and converges
///      against a 10×-refined evaluation of the same integral
///   4. iteration verdicts: contraction on small data, divergence on large,
///      fixed-point residual at the tolerance scale
///   5. the measured trilinear constant is stable under mesh refinement
///
/// All runs are d = 1 analogs (noted by the solver itself); nothing here
/// takes more than a couple of seconds.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "chl/data_factory.hpp"
#include "chl/errors.hpp"
#include "chl/fft.hpp"
#include "chl/field_ops.hpp"
#include "chl/picard.hpp"
#include "chl/semigroup.hpp"
#include "chl/time_grid.hpp"

using namespace chl;

namespace {

constexpr double kPi = std::numbers::pi;

RealField scaled_bump(const Grid& g, double amplitude) {
    BumpSpec spec;
    spec.amplitude = amplitude;
    return build_bump(spec, g);
}

} // namespace

TEST_SUITE("picard") {

TEST_CASE("time grid validates its parameters") {
    CHECK_THROWS_AS(make_time_grid(0.0, 32, 4.0, 6.0), ConfigError);
    CHECK_THROWS_AS(make_time_grid(1.0, 3, 4.0, 6.0), ConfigError);
    CHECK_THROWS_AS(make_time_grid(1.0, 32, 0.5, 6.0), ConfigError);
    CHECK_THROWS_AS(make_time_grid(1.0, 32, 4.0, 3.0), ExponentOutOfRange);
    CHECK_THROWS_AS(make_time_grid(1.0, 32, 4.0, 9.0), ExponentOutOfRange);
}

TEST_CASE("nodes follow the grading and weights are nonnegative") {
    TimeGrid tg = make_time_grid(2.0, 24, 4.0, 6.0);
    REQUIRE(static_cast<int>(tg.nodes.size()) == 24);
    CHECK(tg.nodes.back() == doctest::Approx(2.0).epsilon(1e-15));
    for (int i = 0; i < 24; ++i) {
        const double expect = 2.0 * std::pow((i + 1.0) / 24.0, 4.0);
        CHECK(tg.nodes[static_cast<std::size_t>(i)] == doctest::Approx(expect).epsilon(1e-14));
        if (i > 0) CHECK(tg.nodes[static_cast<std::size_t>(i)] > tg.nodes[static_cast<std::size_t>(i - 1)]);
    }
    CHECK(tg.w0.minCoeff() >= -1e-15); // hat-function integrals, nonneg up to rounding
    CHECK(tg.sigma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tg.beta == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("weights integrate the modeled power law exactly") {
    // ∫₀^{τ_i} τ^{−β} dτ = τ_i^{1−β}/(1−β): the weights must reproduce this
    // for every node because the interpolation is built around τ^{−β}.
    for (double p : {4.0, 6.0, 8.0}) {
        TimeGrid tg = make_time_grid(1.5, 32, 4.0, p);
        for (int i = 0; i < tg.M; ++i) {
            double acc = 0.0;
            for (int j = 0; j <= i; ++j)
                acc += tg.w0(i, j) * std::pow(tg.nodes[static_cast<std::size_t>(j)], -tg.beta);
            const double exact =
                std::pow(tg.nodes[static_cast<std::size_t>(i)], 1.0 - tg.beta) / (1.0 - tg.beta);
            CHECK(acc == doctest::Approx(exact).epsilon(1e-10));
        }
    }
}

TEST_CASE("singular integral reproduces the beta constant") {
    for (double p : {4.0, 6.0, 8.0}) {
        const double sigma = 1.0 - 3.0 / p;
        const double a = 3.0 / p, b = 1.5 * sigma;
        TimeGrid tg = make_time_grid(1.0, 32, 4.0, p);
        // ∫₀^1 (1−τ)^{−a} τ^{−b} dτ = B(1−b, 1−a) = beta_constant(p)
        CHECK(tg.singular_integral(a, b, tg.M) ==
              doctest::Approx(beta_constant(p)).epsilon(1e-6));

        // interior node: the same integral scales like t^{1−a−b}
        const double t_mid = tg.nodes[static_cast<std::size_t>(tg.M / 2 - 1)];
        CHECK(tg.singular_integral(a, b, tg.M / 2) ==
              doctest::Approx(beta_constant(p) * std::pow(t_mid, 1.0 - a - b)).epsilon(1e-6));
    }
    TimeGrid tg = make_time_grid(1.0, 16, 4.0, 6.0);
    CHECK_THROWS_AS(tg.singular_integral(1.2, 0.5, 16), BadExponent);
    CHECK_THROWS_AS(tg.singular_integral(0.5, 0.5, 0), OutOfRange);
}

TEST_CASE("beta constant frozen values and domain") {
    CHECK(beta_constant(4.0) == doctest::Approx(4.77308722707574).epsilon(1e-12));
    CHECK(beta_constant(6.0) == doctest::Approx(5.24411510858424).epsilon(1e-12));
    CHECK(beta_constant(8.0) == doctest::Approx(16.8461146386887).epsilon(1e-12));
    CHECK_THROWS_AS(beta_constant(3.0), ExponentOutOfRange);
    CHECK_THROWS_AS(beta_constant(9.0), ExponentOutOfRange);
    CHECK_THROWS_AS(beta_constant(3.0005), ExponentOutOfRange);
    CHECK_THROWS_AS(beta_constant(8.9995), ExponentOutOfRange);
    CHECK_NOTHROW(beta_constant(3.01));
}

TEST_CASE("smallness threshold and contraction ball") {
    const double C0 = beta_constant(6.0);
    CHECK(eta_threshold(C0) == doctest::Approx(0.168078438864651).epsilon(1e-12));
    CHECK(picard_ball(C0) == doctest::Approx(0.252117658296977).epsilon(1e-12));
    CHECK(eta_threshold(4.0) == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0)) / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(eta_threshold(0.0), NonPositive);
    CHECK_THROWS_AS(picard_ball(-1.0), NonPositive);
}

TEST_CASE("trilinear operator basics") {
    Grid g(1, 128, 16.0 * kPi);
    TimeGrid tg = make_time_grid(0.5, 12, 4.0, 6.0);

    std::vector<SpectralField> zero(tg.nodes.size(), SpectralField(g));
    auto z = gamma_trilinear(zero, zero, zero, tg);
    for (const auto& f : z) CHECK(max_abs_coeff(f) == 0.0);

    auto u = caloric_series(random_band_limited(g, 3, 5ull, 0.1), tg);
    auto v = caloric_series(random_band_limited(g, 3, 6ull, 0.1), tg);
    auto w = caloric_series(random_band_limited(g, 3, 7ull, 0.1), tg);
    auto uvw = gamma_trilinear(u, v, w, tg);
    auto wuv = gamma_trilinear(w, u, v, tg);
    auto vwu = gamma_trilinear(v, w, u, tg);
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < uvw.size(); ++i) {
        scale = std::max(scale, max_abs_coeff(uvw[i]));
        worst = std::max(worst, (uvw[i].coeffs - wuv[i].coeffs).abs().maxCoeff());
        worst = std::max(worst, (uvw[i].coeffs - vwu[i].coeffs).abs().maxCoeff());
    }
    CHECK(worst <= 1e-13 * scale);

    std::vector<SpectralField> short_traj(3, SpectralField(g));
    CHECK_THROWS_AS(gamma_trilinear(short_traj, short_traj, short_traj, tg), GridMismatch);
}

TEST_CASE("trilinear quadrature converges to a refined evaluation") {
    // Caloric gaussian inputs make the Duhamel integrand smooth; a 10×-denser
    // mesh then serves as the quadrature oracle at the shared endpoint t_end.
    Grid g(1, 256, 2.0 * kPi);
    const double t_end = 0.5;

    auto gamma_at_end = [&](int M) {
        TimeGrid tg = make_time_grid(t_end, M, 4.0, 6.0);
        auto u = caloric_series(dft_forward(gaussian(0.01, g)), tg);
        auto v = caloric_series(dft_forward(gaussian(0.02, g)), tg);
        auto w = caloric_series(dft_forward(gaussian(0.04, g)), tg);
        return gamma_trilinear(u, v, w, tg).back();
    };

    SpectralField coarse = gamma_at_end(24);
    SpectralField medium = gamma_at_end(48);
    SpectralField fine = gamma_at_end(240);

    const double scale = max_abs_coeff(fine);
    const double err_coarse = (coarse.coeffs - fine.coeffs).abs().maxCoeff() / scale;
    const double err_medium = (medium.coeffs - fine.coeffs).abs().maxCoeff() / scale;
    // graded product quadrature at M = 24 lands near 2e-3 on this datum
    CHECK(err_coarse <= 5e-3);
    CHECK(err_medium < 0.7 * err_coarse); // refinement actually helps
}

TEST_CASE("iteration contracts on small data") {
    Grid g(1, 256, 16.0 * kPi);
    TimeGrid tg = make_time_grid(1.0, 24, 4.0, 6.0);
    RealField u0 = scaled_bump(g, 0.5);

    PicardTrace tr = picard_iterate(u0, tg, 6.0);
    CHECK(tr.verdict == PicardVerdict::Converged);
    CHECK(tr.final_y <= tr.ball);
    CHECK(tr.final_y > 0.0);
    REQUIRE(tr.iterates.size() >= 2);
    CHECK(tr.iterates.back().update_ratio < 1.0);

    const double res = picard_residual(tr.solution, u0, tg);
    CHECK(res <= 10.0 * 1e-10);

    CHECK_THROWS_AS(picard_iterate(u0, tg, 4.0), ConfigError); // p mismatch
}

TEST_CASE("iteration diverges on large data") {
    Grid g(1, 64, 16.0 * kPi);
    TimeGrid tg = make_time_grid(1.0, 16, 4.0, 6.0);
    RealField u0(g, ArrayXr::Constant(g.size(), 1.0)); // scalar ODE blows up at t = 0.5
    PicardTrace tr = picard_iterate(u0, tg, 6.0, 40, 1e-10);
    CHECK(tr.verdict == PicardVerdict::Diverged);
}

TEST_CASE("iteration agrees with the direct solver on small data") {
    Grid g(1, 256, 16.0 * kPi);
    TimeGrid tg = make_time_grid(1.0, 48, 4.0, 6.0);
    RealField u0 = scaled_bump(g, 0.5);

    PicardTrace tr = picard_iterate(u0, tg, 6.0);
    REQUIRE(tr.verdict == PicardVerdict::Converged);

    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt_init = 1e-4;
    cfg.safety = 0.01;
    SolveResult direct = solve(u0, cfg);
    REQUIRE(direct.outcome == Outcome::Global);

    RealField a = dft_inverse_unchecked(tr.solution.back());
    RealField b = dft_inverse_unchecked(direct.final_state);
    const double rel = lp_norm(RealField(g, a.values - b.values), 3.0) / lp_norm(b, 3.0);
    CHECK(rel <= 0.01);
}

TEST_CASE("measured trilinear constant is mesh stable and deterministic") {
    Grid g(1, 128, 16.0 * kPi);
    TimeGrid tg1 = make_time_grid(1.0, 16, 4.0, 6.0);
    TimeGrid tg2 = make_time_grid(1.0, 32, 4.0, 6.0);

    const double c1 = measure_trilinear_constant(g, tg1, 99ull, 3);
    const double c1b = measure_trilinear_constant(g, tg1, 99ull, 3);
    const double c2 = measure_trilinear_constant(g, tg2, 99ull, 3);
    CHECK(c1 == c1b);
    CHECK(c1 > 0.0);
    CHECK(c2 / c1 > 0.9);
    CHECK(c2 / c1 < 1.1);
}

} // TEST_SUITE
