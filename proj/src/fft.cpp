//============================================================================
// Multi-axis DFT plumbing on top of Eigen's FFT module, plus the padded
// (alias-free) product pipeline.  All transforms are complex-to-complex along
// one axis at a time; lines are gathered into contiguous scratch for the
// strided axes.  Plans are cached per thread inside Eigen::FFT.
//============================================================================

#include "chl/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <cstdlib>
#include <thread>
#include <vector>

namespace chl {

namespace {

//--- (1) thread cap --------------------------------------------------------

int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CHL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return static_cast<int>(hw);
}

// Run fn(begin, end) over [0, count) in roughly equal chunks.  Serial when
// either the cap or the work says so; each worker owns its slice, so the
// result is bitwise independent of the split.
template <class Fn>
void parallel_lines(std::int64_t count, Fn&& fn) {
    int nt = thread_cap();
    if (nt <= 1 || count < 256) {
        fn(std::int64_t{0}, count);
        return;
    }
    nt = static_cast<int>(std::min<std::int64_t>(nt, count));
    std::vector<std::thread> workers;
    workers.reserve(nt);
    const std::int64_t chunk = (count + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::int64_t b = t * chunk, e = std::min(count, b + chunk);
        if (b >= e) break;
        workers.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& w : workers) w.join();
}

//--- (2) in-place axis transforms ------------------------------------------

enum class Dir { forward, inverse };

// Transform `data` (flat row-major, `dim` axes of length n) along `axis`.
// Eigen's fwd is unnormalized; inv divides by n.  Net scaling is applied by
// the callers.
void axis_fft(Complex* data, int dim, int n, int axis, Dir dir) {
    std::int64_t total = 1;
    for (int a = 0; a < dim; ++a) total *= n;
    const std::int64_t lines = total / n;

    // stride between consecutive elements of a line along `axis`,
    // and the count of contiguous "inner" positions to the right of it
    std::int64_t stride = 1;
    for (int a = dim - 1; a > axis; --a) stride *= n;

    parallel_lines(lines, [&](std::int64_t lb, std::int64_t le) {
        Eigen::FFT<double> fft;
        std::vector<Complex> in(n), out(n);
        for (std::int64_t li = lb; li < le; ++li) {
            // decompose line index into (outer, inner) around the axis
            const std::int64_t inner = li % stride;
            const std::int64_t outer = li / stride;
            Complex* base = data + outer * stride * n + inner;
            if (stride == 1) {
                if (dir == Dir::forward) fft.fwd(out.data(), base, n);
                else                     fft.inv(out.data(), base, n);
                std::copy(out.begin(), out.end(), base);
            } else {
                for (int k = 0; k < n; ++k) in[k] = base[k * stride];
                if (dir == Dir::forward) fft.fwd(out.data(), in.data(), n);
                else                     fft.inv(out.data(), in.data(), n);
                for (int k = 0; k < n; ++k) base[k * stride] = out[k];
            }
        }
    });
}

void all_axes(ArrayXc& buf, const Grid& g, Dir dir) {
    for (int a = 0; a < g.dim; ++a) axis_fft(buf.data(), g.dim, g.n, a, dir);
}

//--- (3) Hermitian symmetry ------------------------------------------------

// flat index of the frequency-reflected slot (−k mod n on every axis)
std::int64_t reflect_flat(const Grid& g, std::int64_t flat) {
    int slots[3];
    g.unflatten(flat, slots);
    int rslots[3];
    for (int a = 0; a < g.dim; ++a) rslots[a] = slots[a] == 0 ? 0 : g.n - slots[a];
    return g.flatten(rslots);
}

} // namespace

//--- (4) public transforms --------------------------------------------------

SpectralField dft_forward(const RealField& f) {
    ArrayXc buf = f.values.cast<Complex>();
    all_axes(buf, f.grid, Dir::forward);
    buf *= f.grid.cell_volume();
    return SpectralField(f.grid, std::move(buf));
}

RealField dft_inverse_unchecked(const SpectralField& F) {
    ArrayXc buf = F.coeffs / F.grid.cell_volume();
    all_axes(buf, F.grid, Dir::inverse);
    return RealField(F.grid, buf.real());
}

RealField dft_inverse(const SpectralField& F) {
    const Grid& g = F.grid;
    const double scale = F.coeffs.abs().maxCoeff();
    const double tol = 1e-10 * (scale > 0 ? scale : 1.0);
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const Complex a = F.coeffs[i];
        const Complex b = std::conj(F.coeffs[reflect_flat(g, i)]);
        if (std::abs(a - b) > tol)
            throw SymmetryViolation("dft_inverse: spectrum is not Hermitian-symmetric; "
                                    "coefficients cannot come from a real field");
    }
    return dft_inverse_unchecked(F);
}

//--- (5) padding / truncation ----------------------------------------------

SpectralField pad_spectrum(const SpectralField& F, int factor) {
    if (factor < 2) throw ConfigError("pad_spectrum: factor must be >= 2");
    const Grid& g = F.grid;
    Grid fine(g.dim, g.n * factor, g.L);
    SpectralField out(fine);

    // per coarse axis slot: one or two (fine slot, weight) targets
    const int n = g.n, nf = fine.n;
    struct Target { int slot; double w; };
    std::vector<std::vector<Target>> axis_targets(n);
    for (int s = 0; s < n; ++s) {
        const int k = g.signed_index(s);
        if (k == -n / 2) {
            // split Nyquist mass between ±n/2 so real fields stay real
            axis_targets[s] = {{(nf - n / 2), 0.5}, {n / 2, 0.5}};
        } else {
            axis_targets[s] = {{k >= 0 ? k : nf + k, 1.0}};
        }
    }

    int slots[3];
    for (std::int64_t flat = 0; flat < g.size(); ++flat) {
        const Complex v = F.coeffs[flat];
        if (v == Complex(0, 0)) continue;
        g.unflatten(flat, slots);
        // tensor scatter over up to 2^dim targets
        const auto& t0 = axis_targets[slots[0]];
        const auto& t1 = g.dim > 1 ? axis_targets[slots[1]] : t0;
        const auto& t2 = g.dim > 2 ? axis_targets[slots[2]] : t0;
        for (const auto& a : t0) {
            if (g.dim == 1) {
                out.coeffs[a.slot] += a.w * v;
                continue;
            }
            for (const auto& b : t1) {
                if (g.dim == 2) {
                    out.coeffs[static_cast<std::int64_t>(a.slot) * nf + b.slot] += a.w * b.w * v;
                    continue;
                }
                for (const auto& c : t2) {
                    const std::int64_t fi =
                        (static_cast<std::int64_t>(a.slot) * nf + b.slot) * nf + c.slot;
                    out.coeffs[fi] += a.w * b.w * c.w * v;
                }
            }
        }
    }
    return out;
}

SpectralField truncate_spectrum(const SpectralField& F, int n_coarse) {
    const Grid& fine = F.grid;
    if (n_coarse > fine.n || n_coarse < 8)
        throw ConfigError("truncate_spectrum: bad target size");
    Grid g(fine.dim, n_coarse, fine.L);
    SpectralField out(g);

    const int n = n_coarse, nf = fine.n;
    // per coarse axis slot: fine slots that fold onto it
    std::vector<std::vector<int>> axis_sources(n);
    for (int s = 0; s < n; ++s) {
        const int k = g.signed_index(s);
        if (k == -n / 2 && nf > n) axis_sources[s] = {nf - n / 2, n / 2};
        else axis_sources[s] = {k >= 0 ? k : nf + k};
    }

    int slots[3];
    for (std::int64_t flat = 0; flat < g.size(); ++flat) {
        g.unflatten(flat, slots);
        Complex acc(0, 0);
        for (int a : axis_sources[slots[0]]) {
            if (g.dim == 1) { acc += F.coeffs[a]; continue; }
            for (int b : axis_sources[slots[1]]) {
                if (g.dim == 2) { acc += F.coeffs[static_cast<std::int64_t>(a) * nf + b]; continue; }
                for (int c : axis_sources[slots[2]])
                    acc += F.coeffs[(static_cast<std::int64_t>(a) * nf + b) * nf + c];
            }
        }
        out.coeffs[flat] = acc;
    }
    return out;
}

//--- (6) alias-free products -------------------------------------------------

SpectralField triple_product_dealiased(const SpectralField& A,
                                       const SpectralField& B,
                                       const SpectralField& C) {
    require_same_grid(A.grid, B.grid, "triple_product_dealiased");
    require_same_grid(A.grid, C.grid, "triple_product_dealiased");

    RealField a = dft_inverse_unchecked(pad_spectrum(A));
    ArrayXr prod = a.values * dft_inverse_unchecked(pad_spectrum(B)).values
                            * dft_inverse_unchecked(pad_spectrum(C)).values;
    SpectralField fine = dft_forward(RealField(a.grid, std::move(prod)));
    return truncate_spectrum(fine, A.grid.n);
}

SpectralField cube_dealiased(const SpectralField& F) {
    RealField f = dft_inverse_unchecked(pad_spectrum(F));
    ArrayXr cubed = f.values * f.values * f.values;
    SpectralField fine = dft_forward(RealField(f.grid, std::move(cubed)));
    return truncate_spectrum(fine, F.grid.n);
}

SpectralField cube_dealiased_complex(const SpectralField& F) {
    SpectralField padded = pad_spectrum(F);
    ArrayXc buf = padded.coeffs / padded.grid.cell_volume();
    all_axes(buf, padded.grid, Dir::inverse);
    buf = buf * buf * buf;
    all_axes(buf, padded.grid, Dir::forward);
    buf *= padded.grid.cell_volume();
    SpectralField fine(padded.grid, std::move(buf));
    return truncate_spectrum(fine, F.grid.n);
}

RealField cube_dealiased(const RealField& f) {
    return dft_inverse_unchecked(cube_dealiased(dft_forward(f)));
}

} // namespace chl
