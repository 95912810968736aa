#pragma once

#include <cstddef>
#include <span>

namespace hks {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Unweighted least-squares line through (x_i, y_i).
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of log2(y) against log2(x). Every x and y must be positive.
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// Slope of log2(y) against j, for dyadic block profiles (x is already a
/// log2 scale). Every y must be positive.
SlopeFit fit_log2_profile(std::span<const double> j, std::span<const double> y);

}  // namespace hks
