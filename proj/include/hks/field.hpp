#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hks/grid.hpp"

namespace hks {

/// Real scalar function sampled on a Grid.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0) : grid_(grid), values_(grid.size(), value) {}
  Field(const Grid& grid, std::vector<double> values);

  /// Samples `fn(x)` at every grid point; x has grid.dim() meaningful entries.
  static Field sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double mean() const;
  double max_abs() const;
  bool all_finite() const;
  double at_origin() const { return values_[grid_.origin_index()]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scale);

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double scale, Field f);
/// Plain pointwise product (no dealiasing).
Field pointwise(const Field& a, const Field& b);

/// Fourier coefficients of a Field, stored in FFT order: storage index i along
/// each axis holds lattice wavenumber grid.wavenumber(i).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size()) {}
  SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<std::complex<double>> coefficients() { return coeffs_; }
  std::span<const std::complex<double>> coefficients() const { return coeffs_; }
  std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient at signed lattice wavenumbers (k_1, ..., k_d).
  std::complex<double> at(const std::array<int, kMaxDim>& k) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(std::complex<double> scale);

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Throws PreconditionError when two operands live on different grids.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace hks
