#include <doctest.h>

#include <cmath>

#include "hks/construction.hpp"
#include "hks/error.hpp"
#include "hks/fit.hpp"
#include "hks/probe.hpp"

using namespace hks;

namespace {

const InitialData& data8() {
  static const InitialData data = [] {
    const Grid g = make_grid(1, 1, 16384);
    return make_initial_data(2.0, 8, make_bump(g), g);
  }();
  return data;
}

const BesovParams kP2{2.0, 2.0, kInf};

}  // namespace

TEST_CASE("slope fits on synthetic data") {
  std::vector<double> t;
  std::vector<double> lin;
  std::vector<double> quad;
  for (int k = 0; k <= 4; ++k) {
    t.push_back(1e-4 * std::pow(10.0, k / 2.0));
    lin.push_back(3.0 * t.back());
    quad.push_back(5.0 * t.back() * t.back());
  }
  CHECK(fit_loglog(t, lin).slope == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit_loglog(t, quad).slope == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit_loglog(t, quad).intercept == doctest::Approx(std::log2(5.0)).epsilon(1e-9));
  const std::vector<double> js{5, 6, 7, 8};
  const std::vector<double> cubic{std::exp2(15), std::exp2(18), std::exp2(21), std::exp2(24)};
  CHECK(fit_log2_profile(js, cubic).slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit_log2_profile(js, cubic).points == 4);
  const std::vector<double> bad{1.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(fit_log2_profile(js, bad), NumericalError);
}

TEST_CASE("h field") {
  const auto& d = data8();
  CHECK(h_field(d.u0, d.u0, d.v0, 0.0).max_abs() == 0.0);
  const double t = 0.37;
  const Field linear = d.u0 - t * d.v0;
  CHECK(h_field(linear, d.u0, d.v0, t).max_abs() <= 1e-17);
}

TEST_CASE("Taylor remainder is small against the deviation") {
  const auto& d = data8();
  SolverConfig cfg;
  cfg.T = 1e-3;
  const Field u = evolve(d.u0, cfg).final_state();
  const BesovParams low{0.0, 2.0, kInf};
  const double ratio = besov_norm(h_field(u, d.u0, d.v0, cfg.T), low).norm / besov_norm(u - d.u0, low).norm;
  CHECK(ratio < 1e-3);
}

TEST_CASE("rate sweep") {
  const auto& d = data8();
  const std::vector<double> times{1e-4, 1e-3, 3e-4, 1e-2, 3e-3};
  const auto sweep = rate_sweep(d, kP2, times, {}, 2);
  REQUIRE(sweep.records.size() == 5);
  CHECK(sweep.records.front().t == 1e-4);
  CHECK(sweep.slope_dev_s1.slope == doctest::Approx(1.0).epsilon(0.2));
  CHECK(sweep.slope_h_s2.slope == doctest::Approx(2.0).epsilon(0.15));
  const auto serial = rate_sweep(d, kP2, times, {}, 1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(serial.records[i].h_s2 == sweep.records[i].h_s2);

  CHECK_THROWS_AS(rate_sweep(d, kP2, {1e-4, 1e-3, 1e-2}, {}), PreconditionError);
  CHECK_THROWS_AS(rate_sweep(d, kP2, {1e-3, 2e-3, 3e-3, 4e-3}, {}), PreconditionError);
  CHECK_THROWS_AS(rate_sweep(d, {2.0, 1.0, kInf}, times, {}), PreconditionError);
}

TEST_CASE("inflation sweep") {
  const auto& d = data8();
  CHECK_THROWS_AS(inflation_sweep(d, kP2, 0.05, 4, 7, {}), PreconditionError);
  CHECK_THROWS_AS(inflation_sweep(d, kP2, 0.05, 5, 8, {}), PreconditionError);
  CHECK_THROWS_AS(inflation_sweep(d, {1.5, 2.0, kInf}, 0.05, 5, 7, {}), PreconditionError);
  const auto sweep = inflation_sweep(d, kP2, 0.05, 5, 7, {}, 3);
  REQUIRE(sweep.records.size() == 3);
  for (const auto& r : sweep.records) {
    CHECK(r.t_j == doctest::Approx(0.05 * std::exp2(-r.j)).epsilon(1e-15));
    CHECK(r.block_j == doctest::Approx(r.tv0_block_j).epsilon(1e-3));
    CHECK(r.h_ratio < bands::kTaylorRatio);
  }
  CHECK(sweep.min_dev <= sweep.max_dev);
  CHECK(sweep.ratio == doctest::Approx(sweep.min_dev / sweep.max_dev));

  const auto half = inflation_sweep(d, kP2, 0.025, 5, 7, {});
  CHECK(half.max_dev < sweep.max_dev);
  CHECK(half.min_dev > 0.0);
}

TEST_CASE("calibration halves until admissible") {
  const auto& d = data8();
  SolverConfig base;
  base.blowup_factor = 1.0 + 1e-9;
  CHECK_THROWS_AS(calibrate_eps0(d, kP2, 1.0, 5, 7, base, 0, 3), NumericalError);
  const auto cal = calibrate_eps0(d, kP2, 0.05, 5, 7, {});
  CHECK(cal.halvings == 0);
  CHECK(cal.eps0 == 0.05);
}

TEST_CASE("J and K") {
  const auto& d = data8();
  const auto report = jk_report(d, kP2, 5, 8);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.K_identically_zero);
  CHECK_FALSE(report.slope_K.has_value());
  for (const auto& r : report.rows) {
    CHECK(r.K == 0.0);
    CHECK(r.J2 == 0.0);
    CHECK(r.chain_holds);
  }
  CHECK(report.slope_J1.slope >= bands::kCubicLo);
  CHECK(report.slope_J1.slope <= bands::kCubicHi);
  CHECK_THROWS_AS(jk_decomposition(d, kP2, 2), PreconditionError);
  CHECK_THROWS_AS(jk_decomposition(d, kP2, 9), PreconditionError);
}

TEST_CASE("origin anchor") {
  const auto& d = data8();
  const auto a = origin_anchor(d);
  double sum = 0.0;
  for (int n = 3; n <= 8; ++n) sum += std::exp2(-3.0 * n);
  const double phi0 = d.bump.at_origin();
  CHECK(a.formula == doctest::Approx(17.0 / 12.0 * phi0 * phi0 * sum).epsilon(1e-14));
  CHECK(a.measured == doctest::Approx(a.formula).epsilon(bands::kAnchorTolerance));
  CHECK(a.c0 == a.formula / 2.0);
  CHECK(a.delta > 0.0);
  const Field g = anchor_function(d);
  const std::size_t o = d.grid.origin_index();
  CHECK(std::abs(g[o + 1]) >= a.measured / 2.0);
}

TEST_CASE("commutator probe") {
  const auto& d = data8();
  const auto rep = commutator_check(d, kP2, 5, 8);
  CHECK(rep.flat);
  REQUIRE(rep.slope.has_value());
  CHECK(rep.slope->slope <= bands::kFlatMax);

  const auto zero = commutator_check(Field(d.grid), d.S0, kP2, 5, 8);
  for (const auto& r : zero.rows) CHECK(r.value == 0.0);
  CHECK(zero.flat);
  CHECK_FALSE(zero.slope.has_value());

  const Grid fine = make_grid(1, 1, 32768);
  const auto df = make_initial_data(2.0, 8, make_bump(fine), fine);
  const auto refined = commutator_check(df, kP2, 5, 8);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(refined.rows[i].value == doctest::Approx(rep.rows[i].value).epsilon(0.01));
  }
}

TEST_CASE("lemma suite") {
  const Grid g = make_grid(1, 1, 16384);
  const auto checks = lemma_suite(g);
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(all_passed(checks));
  CHECK(all_passed(lemma_suite(g, 42, LemmaFamily::Zero)));
  CHECK(all_passed(lemma_suite(make_grid(2, 1, 128))));
}
