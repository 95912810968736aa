#include "hks/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hks/error.hpp"

namespace hks {

Grid make_grid(int d, int m, int n) {
  if (d < 1 || d > kMaxDim) {
    throw PreconditionError("make_grid: dimension must be in [1, 3], got " + std::to_string(d));
  }
  if (m < 1) {
    throw PreconditionError("make_grid: domain multiplier must be >= 1, got " + std::to_string(m));
  }
  if (n < 16 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw PreconditionError("make_grid: points per axis must be a power of two >= 16, got " +
                            std::to_string(n));
  }
  const int log2n = std::countr_zero(static_cast<unsigned>(n));
  if (d * log2n > 31) {
    throw PreconditionError("make_grid: " + std::to_string(n) + "^" + std::to_string(d) +
                            " samples exceeds the 2^31 limit");
  }
  Grid g;
  g.d_ = d;
  g.m_ = m;
  g.n_ = n;
  g.size_ = std::size_t{1} << (d * log2n);
  return g;
}

double Grid::cell_volume() const { return std::pow(spacing(), d_); }

double Grid::box_volume() const { return std::pow(length(), d_); }

std::array<int, kMaxDim> Grid::unflatten(std::size_t flat) const {
  std::array<int, kMaxDim> idx{};
  for (int a = d_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < d_; ++a) flat = flat * n_ + idx[a];
  return flat;
}

std::size_t Grid::origin_index() const {
  std::array<int, kMaxDim> idx{};
  idx.fill(n_ / 2);
  return flatten(idx);
}

std::size_t Grid::reflect(std::size_t flat, unsigned axis_mask) const {
  auto idx = unflatten(flat);
  for (int a = 0; a < d_; ++a) {
    if (axis_mask & (1u << a)) idx[a] = (n_ - idx[a]) % n_;
  }
  return flatten(idx);
}

}  // namespace hks
