#include "hks/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hks/error.hpp"
#include "hks/spectral.hpp"

namespace hks {
namespace {

constexpr double kSpeedFloor = 1e-8;

void require_finite(const Field& f, const char* stage) {
  if (!f.all_finite()) throw NumericalError(std::string("rhs: non-finite values in stage '") + stage + "'");
}

// u + a k, the RK stage argument.
Field axpy(const Field& u, double a, const Field& k) {
  Field out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * k[i];
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (dt && !(*dt > 0.0)) throw PreconditionError("SolverConfig: dt must be > 0");
  if (!dt && !(cfl > 0.0 && cfl <= 1.0)) throw PreconditionError("SolverConfig: cfl must be in (0, 1]");
  if (!(T > 0.0)) throw PreconditionError("SolverConfig: T must be > 0");
  if (!(eps >= 0.0)) throw PreconditionError("SolverConfig: eps must be >= 0");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw PreconditionError("SolverConfig: dealias_fraction must be in (0, 1]");
  }
  for (double t : snapshot_times) {
    if (!(t > 0.0 && t <= T)) throw PreconditionError("SolverConfig: snapshot times must lie in (0, T]");
  }
}

Field solve_S(const Field& u) { return apply_multiplier(u, symbols::inverse_helmholtz()); }

Field rhs(const Field& u, const SolverConfig& cfg) {
  const Grid& g = u.grid();
  require_finite(u, "input");
  const Field S = solve_S(u);
  require_finite(S, "S = (1-Lap)^-1 u");
  const Field mobility = dealiased_product(u, Field(g, 1.0) - u, cfg.dealias_fraction);
  require_finite(mobility, "u(1-u)");
  Field out(g);
  for (int a = 0; a < g.dim(); ++a) {
    const Field flux = dealiased_product(mobility, partial(S, a), cfg.dealias_fraction);
    require_finite(flux, "flux");
    out -= partial(flux, a);
  }
  if (cfg.eps > 0.0) out += cfg.eps * laplacian(u);
  require_finite(out, "divergence");
  return out;
}

double max_advective_speed(const Field& u) {
  const Grid& g = u.grid();
  const Field S = solve_S(u);
  std::vector<double> grad_sq(g.size(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const Field dS = partial(S, a);
    for (std::size_t i = 0; i < g.size(); ++i) grad_sq[i] += dS[i] * dS[i];
  }
  double speed = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    speed = std::max(speed, std::abs(1.0 - 2.0 * u[i]) * std::sqrt(grad_sq[i]));
  }
  return speed;
}

Trajectory evolve(const Field& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (!u0.all_finite()) throw NumericalError("evolve: initial datum is not finite");
  const Grid& g = u0.grid();

  std::vector<double> stops = cfg.snapshot_times;
  stops.push_back(cfg.T);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  const double scale = u0.max_abs();

  Field u = u0;
  double t = 0.0;
  for (double stop : stops) {
    while (t < stop) {
      double dt;
      const double speed = max_advective_speed(u);
      if (cfg.dt) {
        dt = *cfg.dt;
      } else {
        dt = cfg.cfl * g.spacing() / std::max(speed, kSpeedFloor);
        if (cfg.eps > 0.0) {
          dt = std::min(dt, cfg.cfl * g.spacing() * g.spacing() / (2.0 * g.dim() * cfg.eps));
        }
      }
      // Land exactly on the stop; absorb a sliver smaller than 1e-12 of a step.
      if (t + dt * (1.0 + 1e-12) >= stop) dt = stop - t;

      const Field k1 = rhs(u, cfg);
      const Field k2 = rhs(axpy(u, 0.5 * dt, k1), cfg);
      const Field k3 = rhs(axpy(u, 0.5 * dt, k2), cfg);
      const Field k4 = rhs(axpy(u, dt, k3), cfg);
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      t = (stop - t == dt) ? stop : t + dt;

      if (!u.all_finite()) {
        throw NumericalError("evolve: NaN/Inf at t = " + std::to_string(t));
      }
      const double amp = u.max_abs();
      if (amp > cfg.blowup_factor * scale) {
        std::ostringstream msg;
        msg << "evolve: blow-up guard tripped at t = " << t << " (max|u| = " << amp
            << ", initial " << scale << ")";
        throw NumericalError(msg.str());
      }
      traj.steps.push_back({t, dt, u.mean(), amp, speed});
    }
    traj.times.push_back(stop);
    traj.states.push_back(u);
  }
  return traj;
}

}  // namespace hks
