#include "hks/fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hks/error.hpp"

namespace hks {
namespace {

std::vector<double> log2_of(std::span<const double> v, const char* what) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw NumericalError(std::string("log-log fit: non-positive or non-finite ") + what);
    }
    out.push_back(std::log2(x));
  }
  return out;
}

}  // namespace

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit_line: x and y differ in length");
  if (x.size() < 2) throw PreconditionError("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw PreconditionError("fit_line: x values are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  return fit;
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  const auto lx = log2_of(x, "abscissa");
  const auto ly = log2_of(y, "ordinate");
  return fit_line(lx, ly);
}

SlopeFit fit_log2_profile(std::span<const double> j, std::span<const double> y) {
  const auto ly = log2_of(y, "profile value");
  return fit_line(j, ly);
}

}  // namespace hks
