#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hks/error.hpp"
#include "hks/random_fields.hpp"
#include "hks/spectral.hpp"
#include "oracle.hpp"

using namespace hks;
using std::numbers::pi;

namespace {

double rel_l2(const Field& a, const Field& b) { return lp_norm(a - b, 2.0) / lp_norm(b, 2.0); }

Field mode(const Grid& g, double k, bool cosine) {
  return Field::sample(g, [&](std::span<const double> x) { return cosine ? std::cos(k * x[0]) : std::sin(k * x[0]); });
}

}  // namespace

TEST_CASE("grid arithmetic") {
  const Grid g = make_grid(1, 1, 16);
  CHECK(g.spacing() == doctest::Approx(3.0 * pi / 2.0).epsilon(1e-15));
  CHECK(g.frequency_step() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  const Grid g2 = make_grid(2, 2, 64);
  CHECK(g2.half_length() == doctest::Approx(24.0 * pi).epsilon(1e-15));
  CHECK(g2.size() == 4096);
  CHECK(g2.coordinate(32) == 0.0);
  CHECK(g2.origin_index() == 32 * 64 + 32);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(0, 1, 16), PreconditionError);
  CHECK_THROWS_AS(make_grid(4, 1, 16), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 0, 16), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 1, 24), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 1, 8), PreconditionError);
  CHECK_THROWS_AS(make_grid(3, 1, 4096), PreconditionError);
}

TEST_CASE("grid flatten and reflect") {
  const Grid g = make_grid(3, 1, 16);
  for (std::size_t flat : {std::size_t{0}, std::size_t{123}, g.size() - 1}) CHECK(g.flatten(g.unflatten(flat)) == flat);
  const auto idx = g.unflatten(g.reflect(g.flatten({3, 8, 10}), 0b101));
  CHECK(g.coordinate(idx[0]) == doctest::Approx(-g.coordinate(3)));
  CHECK(idx[1] == 8);
  CHECK(g.coordinate(idx[2]) == doctest::Approx(-g.coordinate(10)));
}

TEST_CASE("transform of a constant") {
  const Grid g = make_grid(2, 1, 32);
  const auto F = transform(Field(g, 2.5));
  CHECK(F.at({0, 0, 0}).real() == doctest::Approx(2.5).epsilon(1e-15));
  double off = 0.0;
  for (std::size_t i = 1; i < F.size(); ++i) off = std::max(off, std::abs(F[i]));
  CHECK(off < 1e-15);
}

TEST_CASE("transform of a single lattice mode") {
  const Grid g = make_grid(1, 1, 64);
  const auto F = transform(mode(g, 1.0 / 12.0, false));
  CHECK(std::abs(F.at({1, 0, 0}) - std::complex<double>(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(F.at({-1, 0, 0}) - std::complex<double>(0.0, 0.5)) < 1e-15);
  int nonzero = 0;
  for (std::size_t i = 0; i < F.size(); ++i) nonzero += std::abs(F[i]) > 1e-14;
  CHECK(nonzero == 2);
}

TEST_CASE("transform matches the direct Fourier sum") {
  const Grid g = make_grid(1, 2, 64);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Field f(g);
  std::vector<double> raw(64);
  for (int i = 0; i < 64; ++i) raw[i] = f[i] = normal(rng);
  const oracle::Line line{64, 2};
  const auto ref = oracle::dft(line, raw);
  const auto F = transform(f);
  double err = 0.0;
  for (int k = -32; k < 32; ++k) err = std::max(err, std::abs(F.at({k, 0, 0}) - ref[k + 32]));
  CHECK(err < 1e-13);
}

TEST_CASE("round trip of random band-limited fields") {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 3; ++d) {
    const Grid g = make_grid(d, 1, d == 3 ? 32 : 128);
    const Field f = random_band_limited(g, rng, 0.0, 0.5 * g.nyquist());
    CHECK(rel_l2(inverse_transform(transform(f)), f) < 1e-12);
  }
}

TEST_CASE("Parseval, linearity and realness") {
  std::mt19937_64 rng(5);
  const Grid g = make_grid(2, 1, 64);
  const Field a = random_band_limited(g, rng, 0.0, g.nyquist());
  const Field b = random_band_limited(g, rng, 0.0, g.nyquist());
  const double direct = std::pow(lp_norm(a, 2.0), 2);
  CHECK(parseval_norm_squared(transform(a)) == doctest::Approx(direct).epsilon(1e-12));

  const auto lhs = transform(a + 3.0 * b);
  auto rhs = transform(b);
  rhs *= 3.0;
  rhs += transform(a);
  double err = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
  CHECK(err < 1e-14);

  // Below Nyquist every mode has its conjugate partner.
  const Field smooth = random_band_limited(g, rng, 0.0, 0.9 * g.nyquist());
  const auto z = inverse_transform_complex(apply_multiplier(transform(smooth), symbols::derivative(1)));
  double imag = 0.0;
  double real = 0.0;
  for (const auto& c : z) {
    imag = std::max(imag, std::abs(c.imag()));
    real = std::max(real, std::abs(c.real()));
  }
  CHECK(imag <= 1e-14 * real);
}

TEST_CASE("multiplier composition") {
  std::mt19937_64 rng(6);
  const Grid g = make_grid(2, 1, 64);
  const Field f = random_band_limited(g, rng, 0.0, g.nyquist() / 2);
  const auto a = symbols::inverse_helmholtz();
  const auto b = symbols::derivative(0);
  const Field twice = apply_multiplier(apply_multiplier(f, a), b);
  const Field once = apply_multiplier(f, symbols::compose(a, b));
  CHECK(lp_norm(twice - once, 2.0) <= 1e-14 * lp_norm(once, 2.0));
  const Field id = apply_multiplier(apply_multiplier(f, symbols::helmholtz()), symbols::inverse_helmholtz());
  CHECK(rel_l2(id, f) < 1e-13);
}

TEST_CASE("Helmholtz and derivative symbols on eigenfunctions") {
  const Grid g = make_grid(1, 1, 256);
  CHECK(apply_multiplier(Field(g, 1.7), symbols::inverse_helmholtz()).max_abs() == doctest::Approx(1.7));
  const double k = 5.0 / 12.0;
  const Field c = mode(g, k, true);
  CHECK(rel_l2(apply_multiplier(c, symbols::inverse_helmholtz()), (1.0 / (1.0 + k * k)) * c) < 1e-14);
  CHECK(rel_l2(partial(mode(g, k, false), 0), k * c) < 1e-13);
  CHECK(rel_l2(laplacian(c), (-k * k) * c) < 1e-12);
}

TEST_CASE("lp norms") {
  const Grid g = make_grid(1, 1, 128);
  CHECK(lp_norm(Field(g), 1.0) == 0.0);
  CHECK(lp_norm(Field(g), kInf) == 0.0);
  CHECK(lp_norm(Field(g, 1.0), 1.0) == doctest::Approx(24.0 * pi).epsilon(1e-14));
  CHECK(lp_norm(Field(g, 1.0), kInf) == 1.0);
  CHECK(lp_norm(mode(g, 1.0 / 12.0, false), 2.0) == doctest::Approx(std::sqrt(12.0 * pi)).epsilon(1e-14));
}

TEST_CASE("dealiasing") {
  const Grid g = make_grid(1, 1, 128);
  // Products of modes below N/6 stay inside the kept band.
  const Field a = mode(g, 10.0 / 12.0, true);
  const Field b = mode(g, 7.0 / 12.0, false);
  CHECK(rel_l2(dealiased_product(a, b, 2.0 / 3.0), pointwise(a, b)) < 1e-13);
  // A mode above the 2/3 cut is removed.
  const Field high = mode(g, 50.0 / 12.0, true);
  CHECK(truncate_spectrum(high, 2.0 / 3.0).max_abs() < 1e-13);
  CHECK(rel_l2(truncate_spectrum(a, 2.0 / 3.0), a) < 1e-14);
}

TEST_CASE("errors") {
  const Grid g = make_grid(1, 1, 32);
  Field f(g);
  f[3] = std::nan("");
  CHECK_THROWS_AS(transform(f), NumericalError);
  CHECK_THROWS_AS(Field(g) + Field(make_grid(1, 1, 64)), PreconditionError);
}
