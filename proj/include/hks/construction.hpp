#pragma once

#include <vector>

#include "hks/field.hpp"
#include "hks/grid.hpp"

namespace hks {

/// The packet envelope phi: phi_hat is even, real, nonnegative, equal to 1 on
/// |xi| <= 4^-d and 0 on |xi| >= 2^-d, with the shared smooth step in between.
/// phi itself is stored as a one-dimensional profile sampled along one axis
/// of the target grid and applied per coordinate.
struct Bump {
  int d = 1;
  Grid axis_grid;                ///< 1-D grid with the same M and N as the target grid
  std::vector<double> profile;   ///< phi(x_i), i = 0 .. N-1
  double plateau = 0.25;         ///< 4^-d
  double support = 0.5;          ///< 2^-d

  double hat(double xi) const;
  double at_origin() const { return profile[axis_grid.points() / 2]; }
};

/// Builds phi for the grid's dimension. At least `min_plateau_points` lattice
/// frequencies must fall in [0, 4^-d]; otherwise PreconditionError (raise M).
Bump make_bump(const Grid& grid, int min_plateau_points = 4);

/// Integer lattice index of the carrier 17/12 * 2^n on a grid with multiplier M.
long long carrier_index(int n, int m);
double carrier_frequency(int n);

/// f_n(x) = phi(x_1) sin(17/12 2^n x_1) phi(x_2) ... phi(x_d), n >= 3.
/// Throws PreconditionError if the packet's spectrum reaches Nyquist.
Field make_fn(int n, const Bump& bump, const Grid& grid);

struct InitialData {
  Grid grid;
  Bump bump;
  double s = 2.0;
  int n_min = 3;
  int n_max = 8;
  double dealias_fraction = 2.0 / 3.0;
  Field S0;  ///< sum_{n=3}^{n_max} 2^{-n(s+2)} f_n
  Field u0;  ///< (1 - Laplacian) S0
  Field v0;  ///< div(u0 (1 - u0) grad S0)
};

/// Truncated packet sum; PreconditionError when n_max < 3 or n_max > j_max.
InitialData make_initial_data(double s, int n_max, const Bump& bump, const Grid& grid,
                              double dealias_fraction = 2.0 / 3.0);

/// v0 in divergence form: sum_i d_i P(P(u0 (1-u0)) d_i S0), P the 2/3 truncation.
Field make_v0(const Field& u0, const Field& S0, double dealias_fraction = 2.0 / 3.0);
Field make_v0(const InitialData& data);
/// Expanded form (1 - 2u0) grad S0 . grad u0 + u0 (1 - u0) Lap S0, with the
/// products grouped as P(P((1-2u0) d_i u0) d_i S0) + P(P(u0(1-u0)) Lap S0) so
/// it matches the divergence form to rounding.
Field make_v0_expanded(const Field& u0, const Field& S0, double dealias_fraction = 2.0 / 3.0);

}  // namespace hks
