#pragma once

#include <optional>
#include <vector>

#include "hks/field.hpp"

namespace hks {

/// Time-step policy and model options for evolve().
struct SolverConfig {
  /// Fixed step. When unset, the step is cfl * spacing / max(|1-2u| |grad S|, 1e-8),
  /// further limited by the diffusive bound when eps > 0.
  std::optional<double> dt;
  double cfl = 0.4;
  double T = 1.0;
  /// Vanishing viscosity: adds eps * Lap u to the right-hand side.
  double eps = 0.0;
  double dealias_fraction = 2.0 / 3.0;
  /// Output times in (0, T]; T itself is always recorded.
  std::vector<double> snapshot_times;
  /// Abort once max|u| exceeds this multiple of the initial max|u|.
  double blowup_factor = 10.0;

  void validate() const;
};

struct StepDiagnostics {
  double t = 0.0;
  double dt = 0.0;
  double mean = 0.0;
  double max_abs = 0.0;
  double max_speed = 0.0;
};

struct Trajectory {
  std::vector<double> times;   ///< snapshot times, starting at 0
  std::vector<Field> states;   ///< states[0] is the initial datum
  std::vector<StepDiagnostics> steps;

  const Field& final_state() const { return states.back(); }
};

/// S = (1 - Lap)^{-1} u.
Field solve_S(const Field& u);

/// -div(u (1-u) grad S) + eps Lap u with each product dealiased. Throws
/// NumericalError naming the stage that first produced a non-finite value.
Field rhs(const Field& u, const SolverConfig& cfg);

/// Advective speed max |1 - 2u| |grad S| used by the CFL rule.
double max_advective_speed(const Field& u);

/// Classical RK4 from u0 to cfg.T, stepping exactly onto every snapshot time.
Trajectory evolve(const Field& u0, const SolverConfig& cfg);

}  // namespace hks
