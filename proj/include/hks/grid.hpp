#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace hks {

inline constexpr int kMaxDim = 3;

/// Periodic box [-12*pi*M, 12*pi*M)^d sampled with N points per axis.
///
/// The box length 24*pi*M makes the frequency lattice {k / (12 M)}, so every
/// carrier 17/12 * 2^n used by the packet construction is a lattice point.
/// Samples are stored row-major with the last axis fastest.
class Grid {
 public:
  Grid() = default;

  int dim() const { return d_; }
  int multiplier() const { return m_; }
  int points() const { return n_; }
  std::size_t size() const { return size_; }

  double half_length() const { return 12.0 * std::numbers::pi * m_; }
  double length() const { return 2.0 * half_length(); }
  double spacing() const { return length() / n_; }
  /// Volume element spacing^d used by the rectangle rule.
  double cell_volume() const;
  double box_volume() const;

  /// Lattice step 1/(12 M) of the (angular) frequency variable.
  double frequency_step() const { return 1.0 / (12.0 * m_); }
  /// Largest |xi| representable along one axis, (N/2) / (12 M).
  double nyquist() const { return frequency_step() * (n_ / 2); }

  /// Signed lattice index k in [-N/2, N/2) of FFT storage index i.
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
  double frequency(int i) const { return wavenumber(i) * frequency_step(); }
  /// Physical coordinate of sample index i along an axis; index N/2 is x = 0.
  double coordinate(int i) const { return -half_length() + i * spacing(); }

  /// Splits a flat index into per-axis indices (unused trailing entries are 0).
  std::array<int, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const;
  /// Flat index of the grid origin x = 0.
  std::size_t origin_index() const;
  /// Flat index of the point obtained by negating the coordinates selected by
  /// `axis_mask` (bit a set => x_a -> -x_a).
  std::size_t reflect(std::size_t flat, unsigned axis_mask) const;

  bool operator==(const Grid&) const = default;

 private:
  friend Grid make_grid(int d, int m, int n);
  int d_ = 1;
  int m_ = 1;
  int n_ = 16;
  std::size_t size_ = 16;
};

/// Validates (d, M, N) and builds the grid. Throws PreconditionError unless
/// 1 <= d <= 3, M >= 1, N is a power of two >= 16 and N^d <= 2^31.
Grid make_grid(int d, int m, int n);

}  // namespace hks
