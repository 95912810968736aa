#include "hks/random_fields.hpp"

#include <array>
#include <cmath>

#include "hks/error.hpp"
#include "hks/spectral.hpp"

namespace hks {

Field random_band_limited(const Grid& grid, std::mt19937_64& rng, double r_min, double r_max) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField F(grid);
  const auto radii = frequency_magnitudes(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Draw for every lattice point so the stream does not depend on the shell.
    const double re = normal(rng);
    const double im = normal(rng);
    if (radii[i] >= r_min && radii[i] <= r_max) F[i] = {re, im};
  }
  // Real part of the inverse equals the inverse of the Hermitian projection.
  return inverse_transform(F);
}

Field random_low_mode_field(const Grid& grid, std::uint64_t seed, int k_max) {
  if (2 * k_max >= grid.points() / 2) throw PreconditionError("random_low_mode_field: k_max too large");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField F(grid);
  const int width = 2 * k_max + 1;
  std::size_t count = 1;
  for (int a = 0; a < grid.dim(); ++a) count *= width;
  for (std::size_t c = 0; c < count; ++c) {
    std::array<int, kMaxDim> idx{};
    std::size_t rem = c;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      const int k = static_cast<int>(rem % width) - k_max;
      rem /= width;
      idx[a] = k < 0 ? k + grid.points() : k;
    }
    double k_sq = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const int k = grid.wavenumber(idx[a]);
      k_sq += static_cast<double>(k) * k;
    }
    // Algebraic decay keeps the field smooth at every resolution.
    const double amp = 1.0 / (1.0 + k_sq);
    const double re = normal(rng);
    const double im = normal(rng);
    F[grid.flatten(idx)] = {amp * re, amp * im};
  }
  return inverse_transform(F);
}

}  // namespace hks
