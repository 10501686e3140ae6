#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "chl/errors.hpp"

namespace chl {

/// Periodic box [0,L)^dim sampled on a uniform n^dim lattice.
///
/// Physical samples sit at x_m = m·L/n.  Spectral slots follow DFT order per
/// axis: slot k holds the signed wavenumber k for k < n/2 and k−n otherwise,
/// with angular frequency ξ = 2π·k_signed/L.  dim = 3 is the native setting;
/// dim = 1 and 2 are supported as cheap analogs for testing.
struct Grid {
    int dim = 3;      ///< 1, 2 or 3
    int n = 64;       ///< samples per axis, power of two, >= 8
    double L = 16.0 * std::numbers::pi; ///< box edge length

    Grid() = default;
    Grid(int dim_, int n_, double L_) : dim(dim_), n(n_), L(L_) { validate(); }

    void validate() const {
        if (dim < 1 || dim > 3) throw ConfigError("Grid: dim must be 1, 2 or 3");
        if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("Grid: n must be a power of two >= 8");
        if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("Grid: L must be positive and finite");
    }

    /// Total number of lattice points.
    std::int64_t size() const {
        std::int64_t s = 1;
        for (int a = 0; a < dim; ++a) s *= n;
        return s;
    }

    double dx() const { return L / n; }                    ///< physical lattice spacing
    double dxi() const { return 2.0 * std::numbers::pi / L; } ///< spectral lattice spacing
    double cell_volume() const { return std::pow(dx(), dim); }
    double spectral_cell() const { return std::pow(dxi(), dim); }
    double nyquist() const { return dxi() * (n / 2); }     ///< largest per-axis |ξ|

    /// Signed integer wavenumber for DFT slot k on one axis.
    int signed_index(int k) const { return k < n / 2 ? k : k - n; }

    /// Angular frequency of DFT slot k on one axis.
    double xi(int k) const { return dxi() * signed_index(k); }

    /// Decompose a flat row-major index into per-axis DFT slots.
    void unflatten(std::int64_t flat, int* slots) const {
        for (int a = dim - 1; a >= 0; --a) {
            slots[a] = static_cast<int>(flat % n);
            flat /= n;
        }
    }

    std::int64_t flatten(const int* slots) const {
        std::int64_t f = 0;
        for (int a = 0; a < dim; ++a) f = f * n + slots[a];
        return f;
    }

    /// |ξ|² for every lattice slot, flat row-major order.
    std::vector<double> wavenumber_sq() const {
        std::vector<double> per_axis(n);
        for (int k = 0; k < n; ++k) per_axis[k] = xi(k) * xi(k);
        std::vector<double> out(static_cast<std::size_t>(size()));
        int slots[3];
        for (std::int64_t f = 0; f < size(); ++f) {
            unflatten(f, slots);
            double s = 0;
            for (int a = 0; a < dim; ++a) s += per_axis[slots[a]];
            out[static_cast<std::size_t>(f)] = s;
        }
        return out;
    }

    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n && L == o.L; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

} // namespace chl
