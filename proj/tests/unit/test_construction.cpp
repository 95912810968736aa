#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hks/construction.hpp"
#include "hks/error.hpp"
#include "hks/fit.hpp"
#include "hks/littlewood_paley.hpp"
#include "oracle.hpp"

using namespace hks;

namespace {

// (2 pi)^-1 int phi_hat, composite Simpson on the transition band.
double phi_at_zero_quadrature() {
  const int n = 20000;
  const double a = 0.25;
  const double b = 0.5;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * oracle::step((b - (a + i * h)) / (b - a));
  }
  const double transition = sum * h / 3.0;
  return 2.0 * (a + transition) / (2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("bump") {
  const Grid g = make_grid(1, 1, 16384);
  const Bump bump = make_bump(g);
  CHECK(bump.hat(0.0) == 1.0);
  CHECK(bump.hat(0.25) == 1.0);
  CHECK(bump.hat(0.6) == 0.0);
  CHECK(bump.hat(0.5) == 0.0);
  CHECK(bump.at_origin() == doctest::Approx(phi_at_zero_quadrature()).epsilon(1e-10));
  const int c = g.points() / 2;
  const double slope = (bump.profile[c + 1] - bump.profile[c - 1]) / (2.0 * g.spacing());
  CHECK(std::abs(slope) <= 1e-10);
  CHECK(std::abs(bump.profile[c + 5] - bump.profile[c - 5]) <= 1e-16);
}

TEST_CASE("bump in two dimensions") {
  const Grid g = make_grid(2, 1, 256);
  CHECK_THROWS_AS(make_bump(g), PreconditionError);
  const Bump bump = make_bump(g, 1);
  CHECK(bump.plateau == 1.0 / 16.0);
  CHECK(bump.support == 0.25);
  CHECK(bump.hat(0.3) == 0.0);
}

TEST_CASE("carrier on the lattice") {
  CHECK(carrier_index(3, 1) == 136);
  CHECK(carrier_index(5, 2) == 17 * 32 * 2);
  CHECK(carrier_index(3, 1) / 12.0 == doctest::Approx(carrier_frequency(3)).epsilon(1e-15));
}

TEST_CASE("packets") {
  const Grid g = make_grid(1, 1, 8192);
  const Bump bump = make_bump(g);
  for (int n = 4; n <= 7; ++n) {
    const Field fn = make_fn(n, bump, g);
    CHECK(fn.at_origin() == 0.0);
    const double scale = lp_norm(fn, 2.0);
    CHECK(lp_norm(lp_block(fn, n) - fn, 2.0) <= 1e-10 * scale);
    for (int j = -1; j <= 7; ++j) {
      if (j != n) CHECK(lp_norm(lp_block(fn, j), 2.0) <= 1e-10 * scale);
    }
    const auto F = transform(fn);
    double peak = 0.0;
    double outside = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double xi = std::abs(g.frequency(static_cast<int>(i)));
      const double a = std::abs(F[i]);
      peak = std::max(peak, a);
      if (std::abs(xi - carrier_frequency(n)) > 0.5) outside = std::max(outside, a);
    }
    CHECK(outside <= 1e-14 * peak);
  }
  CHECK_THROWS_AS(make_fn(13, bump, g), PreconditionError);
}

TEST_CASE("initial data vanishes at the origin") {
  const Grid g = make_grid(1, 1, 16384);
  const auto data = make_initial_data(2.0, 8, make_bump(g), g);
  CHECK(std::abs(data.S0.at_origin()) <= 1e-10 * data.S0.max_abs());
  CHECK(std::abs(data.u0.at_origin()) <= 1e-10 * data.u0.max_abs());
  CHECK(std::abs(laplacian(data.S0).at_origin()) <= 1e-10 * data.u0.max_abs());
  CHECK_THROWS_AS(make_initial_data(2.0, 2, make_bump(g), g), PreconditionError);
  CHECK_THROWS_AS(make_initial_data(2.0, 9, make_bump(g), g), PreconditionError);
}

TEST_CASE("Besov norm of u0 is uniform in n_max") {
  const Grid g = make_grid(1, 1, 65536);
  const Bump bump = make_bump(g);
  for (double p : {1.0, 2.0, kInf}) {
    const BesovParams params{2.0, p, kInf};
    std::vector<double> norms;
    for (int n_max : {6, 8, 10}) {
      const auto data = make_initial_data(2.0, n_max, bump, g);
      const auto r = besov_norm(data.u0, params);
      CHECK(r.resolved);
      norms.push_back(r.norm);
      // Block profile from the packets alone: 2^{js} ||Delta_j u0||_p = 2^{-2j} ||(1 - Lap) f_j||_p.
      for (int j = 3; j <= n_max; ++j) {
        const Field hf = apply_multiplier(make_fn(j, bump, g), symbols::helmholtz());
        const double expected = std::exp2(-2.0 * j) * lp_norm(hf, p);
        CHECK(r.at(j) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    CHECK((*hi - *lo) / *hi < 0.01);
  }
}

TEST_CASE("v0") {
  const Grid g = make_grid(1, 1, 16384);
  const auto data = make_initial_data(2.0, 8, make_bump(g), g);
  CHECK(std::abs(data.v0.mean()) <= 1e-12 * data.v0.max_abs());
  const Field expanded = make_v0_expanded(data.u0, data.S0);
  CHECK(lp_norm(expanded - data.v0, 2.0) <= 1e-12 * lp_norm(data.v0, 2.0));
  CHECK(make_v0(Field(g), Field(g)).max_abs() == 0.0);
}

TEST_CASE("v0 block profile grows like 2^j at high blocks") {
  const Grid g = make_grid(1, 1, 65536);
  const auto data = make_initial_data(2.0, 10, make_bump(g), g);
  const auto r = besov_norm(data.v0, {2.0, 2.0, kInf});
  std::vector<double> js;
  std::vector<double> ys;
  for (int j = 7; j <= 9; ++j) {
    js.push_back(j);
    ys.push_back(r.at(j));
  }
  const auto fit = fit_log2_profile(js, ys);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.05));
}
