#pragma once

#include <cstdint>
#include <random>

#include "hks/field.hpp"

namespace hks {

/// Real field whose spectrum is filled with independent Gaussian coefficients
/// on the lattice shell r_min <= |xi| <= r_max and zero elsewhere. The same
/// engine state always yields the same field.
Field random_band_limited(const Grid& grid, std::mt19937_64& rng, double r_min, double r_max);

/// Random field that depends only on lattice wavenumbers |k_a| <= k_max, so
/// grids with the same M but different N sample the same function.
Field random_low_mode_field(const Grid& grid, std::uint64_t seed, int k_max);

}  // namespace hks
