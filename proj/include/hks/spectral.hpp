#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hks/field.hpp"

namespace hks {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Forward transform with the e^{-i x.xi} sign convention, normalized so the
/// zero-frequency coefficient is the mean of the field:
///   F(k) = N^{-d} sum_x f(x) exp(-i x . xi_k).
/// Throws NumericalError on non-finite input.
SpectralField transform(const Field& f);

/// Inverse of transform(); returns the real part.
Field inverse_transform(const SpectralField& F);

/// Inverse of transform() keeping the imaginary part (for realness checks).
std::vector<std::complex<double>> inverse_transform_complex(const SpectralField& F);

/// Fourier multiplier sigma(D): a function of the frequency vector plus an
/// order tag used only for diagnostics.
struct MultiplierSymbol {
  std::function<std::complex<double>(std::span<const double>)> value;
  double order = 0.0;
  std::string name;

  std::complex<double> operator()(std::span<const double> xi) const { return value(xi); }
};

namespace symbols {
/// 1 / (1 + |xi|^2), i.e. (1 - Laplacian)^{-1}.
MultiplierSymbol inverse_helmholtz();
/// 1 + |xi|^2, i.e. (1 - Laplacian).
MultiplierSymbol helmholtz();
/// -|xi|^2.
MultiplierSymbol laplacian();
/// i xi_axis.
MultiplierSymbol derivative(int axis);
/// sigma(xi) = profile(|xi|).
MultiplierSymbol radial(std::function<double(double)> profile, double order, std::string name);
/// Pointwise product of two symbols.
MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b);
}  // namespace symbols

/// Coefficientwise product F(k) * sigma(xi_k).
SpectralField apply_multiplier(const SpectralField& F, const MultiplierSymbol& sigma);
/// transform -> multiply -> inverse_transform.
Field apply_multiplier(const Field& f, const MultiplierSymbol& sigma);

/// |xi_k| for every lattice point, in storage order.
std::vector<double> frequency_magnitudes(const Grid& grid);

/// Rectangle-rule L^p norm: (sum |f|^p spacing^d)^{1/p}, or max |f| for p = inf.
double lp_norm(const Field& f, double p);
/// L^2 norm squared via Parseval: box volume times sum |F(k)|^2.
double parseval_norm_squared(const SpectralField& F);

/// Zeroes every coefficient with |k_a| > fraction * N/2 on some axis.
void truncate_spectrum(SpectralField& F, double fraction);
Field truncate_spectrum(const Field& f, double fraction);
/// Pseudo-spectral product P(P(a) * P(b)) with P = truncate_spectrum(., fraction).
Field dealiased_product(const Field& a, const Field& b, double fraction);

/// Spectral partial derivative along `axis`.
Field partial(const Field& f, int axis);
/// Spectral Laplacian.
Field laplacian(const Field& f);

}  // namespace hks
