#include <doctest.h>

#include <cmath>
#include <random>

#include "hks/construction.hpp"
#include "hks/error.hpp"
#include "hks/random_fields.hpp"
#include "hks/solver.hpp"
#include "hks/spectral.hpp"

using namespace hks;

namespace {

double rel_l2(const Field& a, const Field& b) { return lp_norm(a - b, 2.0) / lp_norm(b, 2.0); }

const InitialData& packet_data() {
  static const InitialData data = [] {
    const Grid g = make_grid(1, 1, 16384);
    return make_initial_data(2.0, 8, make_bump(g), g);
  }();
  return data;
}

// Smooth O(1) state far from the constant solutions.
Field wavy_state(const Grid& g) {
  Field w = random_low_mode_field(g, 17, 6);
  w *= 0.25 / w.max_abs();
  return Field(g, 0.4) + w;
}

}  // namespace

TEST_CASE("S solves the Helmholtz problem") {
  const Grid g = make_grid(1, 1, 512);
  CHECK(solve_S(Field(g, 0.3)).max_abs() == doctest::Approx(0.3).epsilon(1e-15));
  const double k = 7.0 / 12.0;
  const Field c = Field::sample(g, [&](std::span<const double> x) { return std::cos(k * x[0]); });
  CHECK(rel_l2(solve_S(c), (1.0 / (1.0 + k * k)) * c) < 1e-14);
  std::mt19937_64 rng(2);
  const Grid g2 = make_grid(2, 1, 64);
  const Field u = random_band_limited(g2, rng, 0.0, g2.nyquist());
  const Field S = solve_S(u);
  CHECK(lp_norm(S - laplacian(S) - u, 2.0) <= 1e-12 * lp_norm(u, 2.0));
}

TEST_CASE("right-hand side") {
  const Grid g = make_grid(2, 1, 64);
  CHECK(rhs(Field(g, 0.3), {}).max_abs() == 0.0);
  std::mt19937_64 rng(8);
  const Field u = random_band_limited(g, rng, 0.0, 2.0);
  CHECK(std::abs(rhs(u, {}).mean()) <= 1e-15 * rhs(u, {}).max_abs());

  const auto& data = packet_data();
  CHECK(lp_norm(rhs(data.u0, {}) + data.v0, 2.0) <= 1e-10 * lp_norm(data.v0, 2.0));
}

TEST_CASE("non-finite states are reported") {
  const Grid g = make_grid(1, 1, 64);
  Field u(g, 0.1);
  u[5] = INFINITY;
  CHECK_THROWS_AS(rhs(u, {}), NumericalError);
}

TEST_CASE("config validation") {
  const Grid g = make_grid(1, 1, 64);
  SolverConfig bad;
  bad.T = -1.0;
  CHECK_THROWS_AS(evolve(Field(g), bad), PreconditionError);
  SolverConfig bad_dt;
  bad_dt.dt = 0.0;
  CHECK_THROWS_AS(evolve(Field(g), bad_dt), PreconditionError);
  SolverConfig bad_snap;
  bad_snap.T = 1.0;
  bad_snap.snapshot_times = {2.0};
  CHECK_THROWS_AS(evolve(Field(g), bad_snap), PreconditionError);
}

TEST_CASE("constant states are steady") {
  const Grid g = make_grid(2, 1, 32);
  SolverConfig cfg;
  cfg.T = 3.7;
  const auto traj = evolve(Field(g, 0.3), cfg);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(traj.final_state()[i] == 0.3);
}

TEST_CASE("snapshots land exactly") {
  const Grid g = make_grid(1, 1, 256);
  SolverConfig cfg;
  cfg.T = 1.0;
  cfg.dt = 0.3;
  cfg.snapshot_times = {0.25, 0.5};
  const auto traj = evolve(wavy_state(g), cfg);
  REQUIRE(traj.times.size() == 4);
  CHECK(traj.times[1] == 0.25);
  CHECK(traj.times[2] == 0.5);
  CHECK(traj.times[3] == 1.0);
  CHECK(traj.steps.back().t == 1.0);
}

TEST_CASE("mass is conserved") {
  const Grid g = make_grid(1, 1, 256);
  const Field u0 = wavy_state(g);
  SolverConfig cfg;
  cfg.T = 5.0;
  const auto traj = evolve(u0, cfg);
  for (const auto& s : traj.steps) CHECK(std::abs(s.mean - u0.mean()) <= 1e-12 * u0.max_abs());

  const auto& data = packet_data();
  SolverConfig small;
  small.T = 1e-2;
  const auto t2 = evolve(data.u0, small);
  CHECK(std::abs(t2.final_state().mean() - data.u0.mean()) <= 1e-12 * data.u0.max_abs());
}

TEST_CASE("RK4 self-convergence") {
  const Grid g = make_grid(1, 1, 256);
  const Field u0 = wavy_state(g);
  std::vector<Field> ends;
  for (double dt : {0.4, 0.2, 0.1}) {
    SolverConfig cfg;
    cfg.T = 4.0;
    cfg.dt = dt;
    ends.push_back(evolve(u0, cfg).final_state());
  }
  const double e1 = lp_norm(ends[0] - ends[1], 2.0);
  const double e2 = lp_norm(ends[1] - ends[2], 2.0);
  const double order = std::log2(e1 / e2);
  MESSAGE("observed order " << order);
  CHECK(order >= 3.5);
}

TEST_CASE("blow-up guard") {
  const Grid g = make_grid(1, 1, 256);
  SolverConfig cfg;
  cfg.T = 1.0;
  cfg.dt = 50.0;
  cfg.blowup_factor = 1.5;
  Field u = wavy_state(g);
  u *= 40.0;
  CHECK_THROWS_AS(evolve(u, cfg), NumericalError);
}

TEST_CASE("resolution independence of the packet data evolution") {
  SolverConfig cfg;
  cfg.T = 1e-2;
  cfg.dt = 1e-3;
  const Grid coarse = make_grid(1, 1, 16384);
  const Grid fine = make_grid(1, 1, 32768);
  const auto a = evolve(make_initial_data(2.0, 8, make_bump(coarse), coarse).u0, cfg).final_state();
  const auto b = evolve(make_initial_data(2.0, 8, make_bump(fine), fine).u0, cfg).final_state();
  double diff = 0.0;
  for (int i = 0; i < coarse.points(); ++i) diff = std::max(diff, std::abs(a[i] - b[2 * i]));
  CHECK(diff <= 1e-8 * a.max_abs());
}

TEST_CASE("vanishing viscosity") {
  const auto& data = packet_data();
  const double t = 1e-2;
  const double eps = 1e-4;
  SolverConfig inviscid;
  inviscid.T = t;
  SolverConfig viscous = inviscid;
  viscous.eps = eps;
  const Field a = evolve(data.u0, inviscid).final_state();
  const Field b = evolve(data.u0, viscous).final_state();
  const double diff = lp_norm(a - b, 2.0);
  // Leading order the difference is t eps Lap u0.
  const double predicted = t * eps * lp_norm(laplacian(data.u0), 2.0);
  MESSAGE("diff / ||u0||_2 = " << diff / lp_norm(data.u0, 2.0));
  CHECK(diff == doctest::Approx(predicted).epsilon(0.02));
}
