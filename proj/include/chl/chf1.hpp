#pragma once

#include <string>

#include "chl/field.hpp"

namespace chl {

/// Snapshot container format "CHF1".
///
/// Layout: one ASCII header line `CHF1 dim n L kind\n` with kind ∈
/// {real, spectral}, followed by little-endian IEEE-754 64-bit floats in
/// row-major lattice order.  `real` stores one float per site; `spectral`
/// interleaves (re, im) per frequency slot in DFT order and uses the
/// classical normalization documented on SpectralField.
void write_chf1(const std::string& path, const RealField& f);
void write_chf1(const std::string& path, const SpectralField& F);

struct Chf1Snapshot {
    std::string kind; // "real" or "spectral"
    Grid grid;
    ArrayXr values;   // set when kind == "real"
    ArrayXc coeffs;   // set when kind == "spectral"
};

Chf1Snapshot read_chf1(const std::string& path);

RealField read_chf1_real(const std::string& path);
SpectralField read_chf1_spectral(const std::string& path);

} // namespace chl
