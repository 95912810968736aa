#include "hks/construction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hks/error.hpp"
#include "hks/littlewood_paley.hpp"
#include "hks/spectral.hpp"

namespace hks {

double Bump::hat(double xi) const {
  const double r = std::abs(xi);
  if (r <= plateau) return 1.0;
  if (r >= support) return 0.0;
  return smooth_step((support - r) / (support - plateau));
}

Bump make_bump(const Grid& grid, int min_plateau_points) {
  Bump bump;
  bump.d = grid.dim();
  bump.plateau = std::ldexp(1.0, -2 * bump.d);
  bump.support = std::ldexp(1.0, -bump.d);
  bump.axis_grid = make_grid(1, grid.multiplier(), grid.points());
  const Grid& g1 = bump.axis_grid;

  const int plateau_points = static_cast<int>(std::floor(bump.plateau / g1.frequency_step())) + 1;
  if (plateau_points < min_plateau_points) {
    throw PreconditionError("make_bump: only " + std::to_string(plateau_points) +
                            " lattice frequencies in [0, 4^-d]; need " +
                            std::to_string(min_plateau_points) + " (raise M)");
  }
  if (bump.support >= g1.nyquist()) throw PreconditionError("make_bump: grid too coarse for phi_hat");

  // phi(x) = (2 pi)^-1 int phi_hat(xi) e^{i x xi} dxi, discretized on the
  // lattice with dxi = 2 pi / L, so the mean-normalized coefficient is phi_hat / L.
  SpectralField F(g1);
  for (int i = 0; i < g1.points(); ++i) F[i] = bump.hat(g1.frequency(i)) / g1.length();
  const Field phi = inverse_transform(F);
  bump.profile.assign(phi.values().begin(), phi.values().end());
  return bump;
}

long long carrier_index(int n, int m) { return 17LL * (1LL << n) * m; }

double carrier_frequency(int n) { return 17.0 / 12.0 * std::ldexp(1.0, n); }

Field make_fn(int n, const Bump& bump, const Grid& grid) {
  if (n < 3) throw PreconditionError("make_fn: packet index must be >= 3");
  if (bump.axis_grid.points() != grid.points() || bump.axis_grid.multiplier() != grid.multiplier() ||
      bump.d != grid.dim()) {
    throw PreconditionError("make_fn: bump was built for a different grid");
  }
  if (carrier_frequency(n) + bump.support >= grid.nyquist()) {
    throw PreconditionError("make_fn: packet " + std::to_string(n) +
                            " exceeds the Nyquist frequency (raise N)");
  }
  const int N = grid.points();
  const long long K = carrier_index(n, grid.multiplier());
  // The carrier phase xi x_i = 2 pi K (i - N/2) / N is reduced exactly in
  // integers before calling sin.
  std::vector<double> carrier(N);
  for (int i = 0; i < N; ++i) {
    long long r = (K * (i - N / 2)) % N;
    if (r < 0) r += N;
    carrier[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / N);
  }
  Field f(grid);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    double v = bump.profile[idx[0]] * carrier[idx[0]];
    for (int a = 1; a < grid.dim(); ++a) v *= bump.profile[idx[a]];
    f[flat] = v;
  }
  return f;
}

InitialData make_initial_data(double s, int n_max, const Bump& bump, const Grid& grid,
                              double dealias_fraction) {
  const auto partition = make_partition(grid);
  if (n_max < 3) throw PreconditionError("make_initial_data: n_max must be >= 3");
  if (n_max > partition.j_max()) {
    throw PreconditionError("make_initial_data: n_max = " + std::to_string(n_max) +
                            " exceeds j_max = " + std::to_string(partition.j_max()));
  }
  InitialData data;
  data.grid = grid;
  data.bump = bump;
  data.s = s;
  data.n_max = n_max;
  data.dealias_fraction = dealias_fraction;
  data.S0 = Field(grid);
  for (int n = data.n_min; n <= n_max; ++n) {
    data.S0 += std::exp2(-n * (s + 2.0)) * make_fn(n, bump, grid);
  }
  data.u0 = apply_multiplier(data.S0, symbols::helmholtz());
  data.v0 = make_v0(data);
  return data;
}

Field make_v0(const Field& u0, const Field& S0, double dealias_fraction) {
  require_same_grid(u0.grid(), S0.grid(), "make_v0");
  const Grid& g = u0.grid();
  const Field mobility = dealiased_product(u0, Field(g, 1.0) - u0, dealias_fraction);
  Field v0(g);
  for (int a = 0; a < g.dim(); ++a) {
    v0 += partial(dealiased_product(mobility, partial(S0, a), dealias_fraction), a);
  }
  return v0;
}

Field make_v0(const InitialData& data) { return make_v0(data.u0, data.S0, data.dealias_fraction); }

Field make_v0_expanded(const Field& u0, const Field& S0, double dealias_fraction) {
  require_same_grid(u0.grid(), S0.grid(), "make_v0_expanded");
  const Grid& g = u0.grid();
  const Field one_minus_2u = Field(g, 1.0) - 2.0 * u0;
  Field v0 = dealiased_product(dealiased_product(u0, Field(g, 1.0) - u0, dealias_fraction),
                               laplacian(S0), dealias_fraction);
  for (int a = 0; a < g.dim(); ++a) {
    const Field drift = dealiased_product(one_minus_2u, partial(u0, a), dealias_fraction);
    v0 += dealiased_product(drift, partial(S0, a), dealias_fraction);
  }
  return v0;
}

}  // namespace hks
