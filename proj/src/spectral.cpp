#include "hks/spectral.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "hks/error.hpp"

namespace hks {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (d, N, direction) and kept for the process
// lifetime. FFTW_ESTIMATE keeps the chosen algorithm (and so the rounding)
// identical from run to run.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Grid& g, int sign) {
    const auto key = std::make_tuple(g.dim(), g.points(), sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::array<int, kMaxDim> dims{};
    dims.fill(g.points());
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * g.size()));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * g.size()));
    fftw_plan plan =
        fftw_plan_dft(g.dim(), dims.data(), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const Grid& g, int sign, std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
  fftw_plan plan = PlanCache::instance().get(g, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

// (-1)^(i_1 + ... + i_d): the phase that moves the sample origin from the
// box corner to x = 0.
double checkerboard(const Grid& g, std::size_t flat) {
  const auto idx = g.unflatten(flat);
  int parity = 0;
  for (int a = 0; a < g.dim(); ++a) parity += idx[a];
  return (parity & 1) ? -1.0 : 1.0;
}

}  // namespace

SpectralField transform(const Field& f) {
  const Grid& g = f.grid();
  if (!f.all_finite()) throw NumericalError("transform: field contains non-finite values");
  std::vector<std::complex<double>> in(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) in[i] = f[i];
  std::vector<std::complex<double>> out(g.size());
  execute(g, FFTW_FORWARD, in, out);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] *= scale * checkerboard(g, i);
  return SpectralField(g, std::move(out));
}

std::vector<std::complex<double>> inverse_transform_complex(const SpectralField& F) {
  const Grid& g = F.grid();
  std::vector<std::complex<double>> in(F.coefficients().begin(), F.coefficients().end());
  for (std::size_t i = 0; i < g.size(); ++i) in[i] *= checkerboard(g, i);
  std::vector<std::complex<double>> out(g.size());
  execute(g, FFTW_BACKWARD, in, out);
  return out;
}

Field inverse_transform(const SpectralField& F) {
  const auto full = inverse_transform_complex(F);
  Field f(F.grid());
  for (std::size_t i = 0; i < full.size(); ++i) f[i] = full[i].real();
  return f;
}

namespace symbols {

namespace {
double norm_sq(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return s;
}
}  // namespace

MultiplierSymbol inverse_helmholtz() {
  return {[](std::span<const double> xi) { return std::complex<double>(1.0 / (1.0 + norm_sq(xi))); },
          -2.0, "(1-Lap)^-1"};
}

MultiplierSymbol helmholtz() {
  return {[](std::span<const double> xi) { return std::complex<double>(1.0 + norm_sq(xi)); }, 2.0,
          "(1-Lap)"};
}

MultiplierSymbol laplacian() {
  return {[](std::span<const double> xi) { return std::complex<double>(-norm_sq(xi)); }, 2.0, "Lap"};
}

MultiplierSymbol derivative(int axis) {
  return {[axis](std::span<const double> xi) { return std::complex<double>(0.0, xi[axis]); }, 1.0,
          "d/dx" + std::to_string(axis + 1)};
}

MultiplierSymbol radial(std::function<double(double)> profile, double order, std::string name) {
  return {[profile = std::move(profile)](std::span<const double> xi) {
            return std::complex<double>(profile(std::sqrt(norm_sq(xi))));
          },
          order, std::move(name)};
}

MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  return {[a, b](std::span<const double> xi) { return a(xi) * b(xi); }, a.order + b.order,
          a.name + "*" + b.name};
}

}  // namespace symbols

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSymbol& sigma) {
  const Grid& g = F.grid();
  SpectralField out(g);
  std::array<double, kMaxDim> xi{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    for (int a = 0; a < g.dim(); ++a) xi[a] = g.frequency(idx[a]);
    const auto s = sigma(std::span<const double>(xi.data(), g.dim()));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw NumericalError("apply_multiplier: symbol '" + sigma.name + "' is not finite on the lattice");
    }
    out[i] = F[i] * s;
  }
  return out;
}

Field apply_multiplier(const Field& f, const MultiplierSymbol& sigma) {
  return inverse_transform(apply_multiplier(transform(f), sigma));
}

std::vector<double> frequency_magnitudes(const Grid& g) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double x = g.frequency(idx[a]);
      s += x * x;
    }
    out[i] = std::sqrt(s);
  }
  return out;
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw PreconditionError("lp_norm: p must lie in [1, inf]");
  if (std::isinf(p)) return f.max_abs();
  const double scale = f.max_abs();
  if (scale == 0.0) return 0.0;
  // Scaling by the max keeps |f/scale|^p in range for large p.
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : f.values()) sum += std::abs(v);
    return sum * f.grid().cell_volume();
  }
  if (p == 2.0) {
    for (double v : f.values()) sum += (v / scale) * (v / scale);
  } else {
    for (double v : f.values()) sum += std::pow(std::abs(v) / scale, p);
  }
  return scale * std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

double parseval_norm_squared(const SpectralField& F) {
  double s = 0.0;
  for (const auto& c : F.coefficients()) s += std::norm(c);
  return s * F.grid().box_volume();
}

void truncate_spectrum(SpectralField& F, double fraction) {
  const Grid& g = F.grid();
  const int keep = static_cast<int>(std::floor(fraction * (g.points() / 2)));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    for (int a = 0; a < g.dim(); ++a) {
      if (std::abs(g.wavenumber(idx[a])) > keep) {
        F[i] = 0.0;
        break;
      }
    }
  }
}

Field truncate_spectrum(const Field& f, double fraction) {
  auto F = transform(f);
  truncate_spectrum(F, fraction);
  return inverse_transform(F);
}

Field dealiased_product(const Field& a, const Field& b, double fraction) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  return truncate_spectrum(pointwise(truncate_spectrum(a, fraction), truncate_spectrum(b, fraction)),
                           fraction);
}

Field partial(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw PreconditionError("partial: axis out of range");
  return apply_multiplier(f, symbols::derivative(axis));
}

Field laplacian(const Field& f) { return apply_multiplier(f, symbols::laplacian()); }

}  // namespace hks
