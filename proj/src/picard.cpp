#include "chl/picard.hpp"

#include <cmath>
#include <vector>

#include "chl/data_factory.hpp"
#include "chl/errors.hpp"
#include "chl/fft.hpp"
#include "chl/field_ops.hpp"
#include "chl/semigroup.hpp"

namespace chl {

namespace {

void require_on_grid(const std::vector<SpectralField>& x, const TimeGrid& tg,
                     const char* who) {
    if (static_cast<int>(x.size()) != tg.M)
        throw GridMismatch(std::string(who) + ": trajectory is not sampled on the time grid");
    for (std::size_t i = 1; i < x.size(); ++i)
        require_same_grid(x[i].grid, x[0].grid, who);
}

} // namespace

double beta_constant(double p) {
    constexpr double kEdge = 1e-3;
    if (!(p > 3.0 + kEdge) || !(p < 9.0 - kEdge))
        throw ExponentOutOfRange(
            "beta_constant: the kernel integral converges only for p in (3, 9) "
            "and is evaluated away from a 1e-3 edge margin");
    const double a = 1.0 - 3.0 / p;              // = σ, first Beta argument
    const double b = 1.0 - 1.5 * (1.0 - 3.0 / p); // 1 − 3σ/2
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double eta_threshold(double C0) {
    if (!(C0 > 0.0) || !std::isfinite(C0))
        throw NonPositive("eta_threshold: C0 must be positive and finite");
    return 2.0 / (3.0 * std::sqrt(3.0)) / std::sqrt(C0);
}

double picard_ball(double C0) {
    if (!(C0 > 0.0) || !std::isfinite(C0))
        throw NonPositive("picard_ball: C0 must be positive and finite");
    return 1.0 / (std::sqrt(3.0) * std::sqrt(C0));
}

double y_norm(const std::vector<SpectralField>& x, const TimeGrid& tg) {
    require_on_grid(x, tg, "y_norm");
    double sup = 0.0;
    for (int i = 0; i < tg.M; ++i) {
        const double lp = lp_norm(dft_inverse_unchecked(x[static_cast<std::size_t>(i)]), tg.p);
        sup = std::max(sup, std::pow(tg.nodes[static_cast<std::size_t>(i)], 0.5 * tg.sigma) * lp);
    }
    return sup;
}

double sup_l3(const std::vector<SpectralField>& x) {
    double sup = 0.0;
    for (const SpectralField& xi : x)
        sup = std::max(sup, lp_norm(dft_inverse_unchecked(xi), 3.0));
    return sup;
}

std::vector<SpectralField> caloric_series(const SpectralField& f, const TimeGrid& tg) {
    std::vector<SpectralField> out;
    out.reserve(static_cast<std::size_t>(tg.M));
    for (double tau : tg.nodes) out.push_back(heat_propagate(f, tau));
    return out;
}

std::vector<SpectralField> gamma_trilinear(const std::vector<SpectralField>& u1,
                                           const std::vector<SpectralField>& u2,
                                           const std::vector<SpectralField>& u3,
                                           const TimeGrid& tg) {
    require_on_grid(u1, tg, "gamma_trilinear");
    require_on_grid(u2, tg, "gamma_trilinear");
    require_on_grid(u3, tg, "gamma_trilinear");
    require_same_grid(u1[0].grid, u2[0].grid, "gamma_trilinear");
    require_same_grid(u1[0].grid, u3[0].grid, "gamma_trilinear");

    const std::size_t M = static_cast<std::size_t>(tg.M);
    std::vector<SpectralField> prod;
    prod.reserve(M);
    for (std::size_t j = 0; j < M; ++j)
        prod.push_back(triple_product_dealiased(u1[j], u2[j], u3[j]));

    std::vector<SpectralField> out;
    out.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
        SpectralField acc(u1[0].grid);
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = tg.w0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (w == 0.0) continue;
            const SpectralField hp = heat_propagate(prod[j], tg.nodes[i] - tg.nodes[j]);
            acc.coeffs += w * hp.coeffs;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

PicardTrace picard_iterate(const RealField& u0, const TimeGrid& tg, double p,
                           int max_iter, double tol) {
    if (std::abs(p - tg.p) > 1e-12)
        throw ConfigError("picard_iterate: p disagrees with the time grid's exponent");
    if (max_iter < 1) throw OutOfRange("picard_iterate: max_iter must be >= 1");
    if (!(tol > 0.0)) throw NonPositive("picard_iterate: tol must be positive");
    if (!u0.values.isFinite().all())
        throw NumericalError("picard_iterate: datum contains non-finite samples");

    const double C0 = beta_constant(p);

    PicardTrace trace;
    trace.p = p;
    trace.sigma = tg.sigma;
    trace.ball = picard_ball(C0);
    trace.eta = eta_threshold(C0);

    const std::vector<SpectralField> x0 = caloric_series(dft_forward(u0), tg);
    std::vector<SpectralField> x = x0;
    double prev_diff = std::max(y_norm(x0, tg), 1e-300);

    for (int iter = 1; iter <= max_iter; ++iter) {
        const std::vector<SpectralField> gamma = gamma_trilinear(x, x, x, tg);
        std::vector<SpectralField> next(x.size(), SpectralField(u0.grid));
        std::vector<SpectralField> diff(x.size(), SpectralField(u0.grid));
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i].coeffs = x0[i].coeffs + gamma[i].coeffs;
            diff[i].coeffs = next[i].coeffs - x[i].coeffs;
        }
        x = std::move(next);

        PicardIterateRow row;
        row.iter = iter;
        row.y_norm = y_norm(x, tg);
        row.l3_norm = sup_l3(x);
        row.strong_norm = row.l3_norm + row.y_norm;
        const double d = y_norm(diff, tg);
        row.update_ratio = d / prev_diff;
        prev_diff = std::max(d, 1e-300);
        trace.iterates.push_back(row);
        trace.final_y = row.y_norm;

        if (!std::isfinite(row.y_norm) || row.y_norm > 10.0 * trace.ball) {
            trace.verdict = PicardVerdict::Diverged;
            break;
        }
        if (d < tol) {
            trace.verdict = PicardVerdict::Converged;
            break;
        }
        if (iter == max_iter) trace.verdict = PicardVerdict::Stalled;
    }
    trace.solution = std::move(x);
    return trace;
}

double picard_residual(const std::vector<SpectralField>& x, const RealField& u0,
                       const TimeGrid& tg) {
    require_on_grid(x, tg, "picard_residual");
    const std::vector<SpectralField> x0 = caloric_series(dft_forward(u0), tg);
    const std::vector<SpectralField> gamma = gamma_trilinear(x, x, x, tg);
    std::vector<SpectralField> res(x.size(), SpectralField(u0.grid));
    for (std::size_t i = 0; i < x.size(); ++i)
        res[i].coeffs = x[i].coeffs - x0[i].coeffs - gamma[i].coeffs;
    return y_norm(res, tg);
}

double measure_trilinear_constant(const Grid& grid, const TimeGrid& tg,
                                  std::uint64_t seed, int trials, int kmax) {
    if (trials < 1) throw OutOfRange("measure_trilinear_constant: need at least one trial");
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<std::vector<SpectralField>> u(3);
        double denom = 1.0;
        for (int j = 0; j < 3; ++j) {
            const SpectralField f = random_band_limited(
                grid, kmax, seed + 977u * static_cast<std::uint64_t>(3 * trial + j));
            u[static_cast<std::size_t>(j)] = caloric_series(f, tg);
            denom *= y_norm(u[static_cast<std::size_t>(j)], tg);
        }
        if (denom == 0.0) continue;
        const double num = y_norm(gamma_trilinear(u[0], u[1], u[2], tg), tg);
        worst = std::max(worst, num / denom);
    }
    return worst;
}

} // namespace chl
