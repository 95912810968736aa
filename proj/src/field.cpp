#include "hks/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hks/error.hpp"

namespace hks {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw PreconditionError(std::string(where) + ": operands live on different grids");
}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("Field: expected " + std::to_string(grid_.size()) + " samples, got " +
                            std::to_string(values_.size()));
  }
}

Field Field::sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn) {
  Field f(grid);
  std::array<double, kMaxDim> x{};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coordinate(idx[a]);
    f.values_[i] = fn(std::span<const double>(x.data(), grid.dim()));
  }
  return f;
}

double Field::mean() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_, "Field::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_, "Field::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double scale, Field f) { return f *= scale; }

Field pointwise(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise");
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

SpectralField::SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw PreconditionError("SpectralField: coefficient count does not match grid");
  }
}

std::complex<double> SpectralField::at(const std::array<int, kMaxDim>& k) const {
  const int n = grid_.points();
  std::array<int, kMaxDim> idx{};
  for (int a = 0; a < grid_.dim(); ++a) {
    if (k[a] < -n / 2 || k[a] >= n / 2) return {0.0, 0.0};
    idx[a] = k[a] < 0 ? k[a] + n : k[a];
  }
  return coeffs_[grid_.flatten(idx)];
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField::operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(std::complex<double> scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

}  // namespace hks
