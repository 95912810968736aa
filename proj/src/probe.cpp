#include "hks/probe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hks/parallel.hpp"
#include "hks/spectral.hpp"

namespace hks {
namespace {

SolverConfig config_to(const SolverConfig& base, double T) {
  SolverConfig cfg = base;
  cfg.T = T;
  cfg.snapshot_times.clear();
  return cfg;
}

// 2^{js} ||Delta_j f||_p through the block symbol of a prebuilt partition.
double weighted_block(const Field& f, const DyadicPartition& partition, int j, const BesovParams& params) {
  return std::exp2(params.s * j) * lp_norm(apply_multiplier(f, partition.symbol(j)), params.p);
}

BesovParams shifted(const BesovParams& params, double ds) {
  BesovParams out = params;
  out.s += ds;
  return out;
}

void check_block_range(const InitialData& data, int j_min, int j_max, int lo, int hi_offset,
                       const char* where) {
  const int hi = data.n_max + hi_offset;
  if (j_min > j_max || j_min < lo || j_max > hi) {
    std::ostringstream msg;
    msg << where << ": block range [" << j_min << ", " << j_max << "] must lie in [" << lo << ", " << hi
        << "]";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

void require_smoothness(int d, const BesovParams& params, const char* where) {
  const double critical = 1.0 + (std::isinf(params.p) ? 0.0 : d / params.p);
  if (!(params.s > critical)) {
    std::ostringstream msg;
    msg << where << ": needs s > 1 + d/p = " << critical << ", got s = " << params.s;
    throw PreconditionError(msg.str());
  }
}

Field h_field(const Field& u_t, const Field& u0, const Field& v0, double t) {
  require_same_grid(u_t.grid(), u0.grid(), "h_field");
  require_same_grid(u_t.grid(), v0.grid(), "h_field");
  Field h(u_t.grid());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = u_t[i] - u0[i] + t * v0[i];
  return h;
}

RateSweep rate_sweep(const InitialData& data, const BesovParams& params, std::vector<double> times,
                     const SolverConfig& base, unsigned threads) {
  require_smoothness(data.grid.dim(), params, "rate_sweep");
  if (times.size() < 4) throw PreconditionError("rate_sweep: need at least 4 times");
  std::sort(times.begin(), times.end());
  if (!(times.front() > 0.0)) throw PreconditionError("rate_sweep: times must be positive");
  if (times.back() < 10.0 * times.front()) {
    throw PreconditionError("rate_sweep: times must span at least a decade");
  }

  RateSweep out;
  out.records.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const double t = times[i];
    Field u_t;
    try {
      u_t = evolve(data.u0, config_to(base, t)).final_state();
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "rate_sweep: evolve to t = " << t << " failed: " << e.what();
      throw NumericalError(msg.str());
    }
    const auto dev = block_lp_norms(u_t - data.u0, params.p);
    const auto h = block_lp_norms(h_field(u_t, data.u0, data.v0, t), params.p);
    RateRecord& r = out.records[i];
    r.t = t;
    r.dev_s = besov_from_blocks(dev, params).norm;
    r.dev_s1 = besov_from_blocks(dev, shifted(params, -1.0)).norm;
    r.dev_s2 = besov_from_blocks(dev, shifted(params, -2.0)).norm;
    r.h_s2 = besov_from_blocks(h, shifted(params, -2.0)).norm;
    r.norm_s = besov_norm(u_t, params).norm;
  });

  std::vector<double> ts;
  std::vector<double> d1;
  std::vector<double> h2;
  for (const auto& r : out.records) {
    ts.push_back(r.t);
    d1.push_back(r.dev_s1);
    h2.push_back(r.h_s2);
  }
  out.slope_dev_s1 = fit_loglog(ts, d1);
  out.slope_h_s2 = fit_loglog(ts, h2);
  const double u0_norm = besov_norm(data.u0, params).norm;
  for (const auto& r : out.records) out.kappa = std::max(out.kappa, r.norm_s / u0_norm);
  return out;
}

InflationSweep inflation_sweep(const InitialData& data, const BesovParams& params, double eps0, int j_min,
                               int j_max, const SolverConfig& base, unsigned threads) {
  require_smoothness(data.grid.dim(), params, "inflation_sweep");
  check_block_range(data, j_min, j_max, 5, -1, "inflation_sweep");
  if (!(eps0 > 0.0)) throw PreconditionError("inflation_sweep: eps0 must be positive");

  const auto partition = make_partition(data.grid);
  const auto v0_blocks = block_lp_norms(data.v0, params.p);
  const std::size_t count = static_cast<std::size_t>(j_max - j_min + 1);
  std::vector<InflationRecord> records(count);
  std::vector<std::string> failures(count);

  parallel_for(count, threads, [&](std::size_t i) {
    const int j = j_min + static_cast<int>(i);
    const double t = eps0 * std::exp2(-j);
    Field u_t;
    try {
      u_t = evolve(data.u0, config_to(base, t)).final_state();
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "j = " << j << ", t = " << t << ": " << e.what();
      failures[i] = msg.str();
      return;
    }
    const Field diff = u_t - data.u0;
    const Field h = h_field(u_t, data.u0, data.v0, t);
    const auto dev_blocks = block_lp_norms(diff, params.p);
    const auto dev = besov_from_blocks(dev_blocks, params);
    InflationRecord& r = records[i];
    r.j = j;
    r.t_j = t;
    r.dev_s = dev.norm;
    r.block_j = dev.at(j);
    r.argmax_block = dev.argmax_block();
    r.tv0_block_j = std::exp2(params.s * j) * t * v0_blocks.norms[static_cast<std::size_t>(j + 1)];
    r.h_block_j = weighted_block(h, partition, j, params);
    r.dev_s1 = besov_from_blocks(dev_blocks, shifted(params, -1.0)).norm;
    r.dev_s2 = besov_from_blocks(dev_blocks, shifted(params, -2.0)).norm;
    r.h_s2 = besov_norm(h, shifted(params, -2.0)).norm;
    r.h_ratio = r.dev_s2 > 0.0 ? r.h_s2 / r.dev_s2 : 0.0;
  });

  std::vector<InflationRecord> done;
  std::string first_failure;
  for (std::size_t i = 0; i < count; ++i) {
    if (failures[i].empty()) {
      done.push_back(records[i]);
    } else if (first_failure.empty()) {
      first_failure = failures[i];
    }
  }
  if (!first_failure.empty()) {
    throw SweepAborted("inflation_sweep aborted at " + first_failure, std::move(done));
  }

  InflationSweep out;
  out.records = std::move(records);
  out.min_dev = out.max_dev = out.records.front().dev_s;
  out.min_block = out.max_block = out.records.front().block_j;
  std::vector<double> js;
  std::vector<double> profile;
  for (const auto& r : out.records) {
    out.min_dev = std::min(out.min_dev, r.dev_s);
    out.max_dev = std::max(out.max_dev, r.dev_s);
    out.min_block = std::min(out.min_block, r.block_j);
    out.max_block = std::max(out.max_block, r.block_j);
    js.push_back(r.j);
    profile.push_back(r.tv0_block_j / r.t_j);
  }
  out.ratio = out.max_dev > 0.0 ? out.min_dev / out.max_dev : 0.0;
  out.block_ratio = out.max_block > 0.0 ? out.min_block / out.max_block : 0.0;
  if (js.size() >= 2) out.slope_v0_profile = fit_log2_profile(js, profile);
  return out;
}

Calibration calibrate_eps0(const InitialData& data, const BesovParams& params, double start, int j_min,
                           int j_max, const SolverConfig& base, unsigned threads, int max_halvings) {
  Calibration cal;
  cal.eps0 = start;
  for (cal.halvings = 0; cal.halvings <= max_halvings; ++cal.halvings) {
    try {
      const auto sweep = inflation_sweep(data, params, cal.eps0, j_min, j_max, base, threads);
      cal.worst_h_ratio = 0.0;
      for (const auto& r : sweep.records) cal.worst_h_ratio = std::max(cal.worst_h_ratio, r.h_ratio);
      if (cal.worst_h_ratio < bands::kTaylorRatio) return cal;
    } catch (const NumericalError&) {
      // blow-up guard or NaN: fall through and halve
    }
    cal.eps0 /= 2.0;
  }
  throw NumericalError("calibrate_eps0: no admissible eps0 after " + std::to_string(max_halvings) +
                       " halvings");
}

JKRow jk_decomposition(const InitialData& data, const BesovParams& params, int j) {
  if (j < 3 || j > data.n_max) {
    throw PreconditionError("jk_decomposition: j = " + std::to_string(j) + " outside [3, " +
                            std::to_string(data.n_max) + "]");
  }
  const Grid& g = data.grid;
  const int d = g.dim();
  const auto partition = make_partition(g);
  const auto block = partition.symbol(j);
  const auto U = transform(data.u0);
  const Field one_minus_2u = Field(g, 1.0) - 2.0 * data.u0;
  const double weight = std::exp2(params.s * j);

  JKRow row;
  row.j = j;
  Field drift_1;
  for (int i = 0; i < d; ++i) {
    const Field coefficient = pointwise(one_minus_2u, partial(data.S0, i));
    const Field localized =
        inverse_transform(apply_multiplier(U, symbols::compose(block, symbols::derivative(i))));
    const double term = weight * lp_norm(pointwise(coefficient, localized), params.p);
    if (i == 0) {
      row.J = term;
      drift_1 = coefficient;
    } else {
      row.K += term;
    }
  }

  const auto F = transform(make_fn(j, data.bump, g));
  const auto d1 = symbols::derivative(0);
  auto norm_of = [&](const MultiplierSymbol& sigma) {
    return lp_norm(pointwise(drift_1, inverse_transform(apply_multiplier(F, sigma))), params.p);
  };
  row.J1 = norm_of(symbols::compose(symbols::compose(d1, d1), d1));
  for (int i = 1; i < d; ++i) {
    const auto di = symbols::derivative(i);
    row.J2 += norm_of(symbols::compose(d1, symbols::compose(di, di)));
  }
  row.J3 = norm_of(d1);
  const double lower = std::exp2(-2.0 * j) * (row.J1 - row.J2 - row.J3);
  row.chain_holds = row.J >= lower - 1e-12 * std::abs(lower);
  return row;
}

Field anchor_function(const InitialData& data) {
  const Grid& g = data.grid;
  Field gfun = pointwise(Field(g, 1.0) - 2.0 * data.u0, partial(data.S0, 0));
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    for (int a = 0; a < g.dim(); ++a) gfun[flat] *= data.bump.profile[idx[a]];
  }
  return gfun;
}

OriginAnchor origin_anchor(const InitialData& data) {
  const Grid& g = data.grid;
  const int d = g.dim();
  OriginAnchor out;
  const Field gfun = anchor_function(data);
  out.measured = std::abs(gfun.at_origin());
  double sum = 0.0;
  for (int n = data.n_min; n <= data.n_max; ++n) sum += std::exp2(-n * (data.s + 1.0));
  out.formula = 17.0 / 12.0 * std::pow(data.bump.at_origin(), 2 * d) * sum;
  out.c0 = out.formula / 2.0;

  const double half = out.measured / 2.0;
  std::vector<double> radii(g.size());
  double first_fail = kInf;
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += g.coordinate(idx[a]) * g.coordinate(idx[a]);
    radii[flat] = std::sqrt(r2);
    if (std::abs(gfun[flat]) < half) first_fail = std::min(first_fail, radii[flat]);
  }
  for (double r : radii) {
    if (r < first_fail) out.delta = std::max(out.delta, r);
  }
  return out;
}

JKReport jk_report(const InitialData& data, const BesovParams& params, int j_min, int j_max,
                   unsigned threads) {
  check_block_range(data, j_min, j_max, 3, 0, "jk_report");
  JKReport out;
  out.rows.resize(static_cast<std::size_t>(j_max - j_min + 1));
  parallel_for(out.rows.size(), threads, [&](std::size_t i) {
    out.rows[i] = jk_decomposition(data, params, j_min + static_cast<int>(i));
  });
  out.anchor = origin_anchor(data);
  std::vector<double> js;
  std::vector<double> j1;
  std::vector<double> k;
  out.K_identically_zero = true;
  for (const auto& r : out.rows) {
    js.push_back(r.j);
    j1.push_back(r.J1);
    k.push_back(r.K);
    if (r.K != 0.0) out.K_identically_zero = false;
  }
  if (js.size() >= 2) {
    out.slope_J1 = fit_log2_profile(js, j1);
    if (data.grid.dim() >= 2 && !out.K_identically_zero) out.slope_K = fit_log2_profile(js, k);
  }
  return out;
}

CommutatorReport commutator_check(const Field& u0, const Field& S0, const BesovParams& params, int j_min,
                                  int j_max, double dealias_fraction, unsigned threads) {
  require_same_grid(u0.grid(), S0.grid(), "commutator_check");
  const Grid& g = u0.grid();
  const auto partition = make_partition(g);
  if (j_min > j_max || j_min < -1 || j_max > partition.j_max()) {
    throw PreconditionError("commutator_check: block range outside the partition");
  }
  const Field one_minus_2u = Field(g, 1.0) - 2.0 * u0;
  std::vector<Field> velocity;
  for (int a = 0; a < g.dim(); ++a) {
    velocity.push_back(dealiased_product(one_minus_2u, partial(S0, a), dealias_fraction));
  }
  CommutatorReport out;
  out.rows.resize(static_cast<std::size_t>(j_max - j_min + 1));
  parallel_for(out.rows.size(), threads, [&](std::size_t i) {
    const int j = j_min + static_cast<int>(i);
    out.rows[i] = {j, std::exp2(params.s * j) *
                          lp_norm(commutator(j, velocity, u0, dealias_fraction), params.p)};
  });
  std::vector<double> js;
  std::vector<double> vals;
  bool any_zero = false;
  bool all_zero = true;
  for (const auto& r : out.rows) {
    js.push_back(r.j);
    vals.push_back(r.value);
    if (r.value == 0.0) any_zero = true; else all_zero = false;
  }
  if (!any_zero && js.size() >= 2) out.slope = fit_log2_profile(js, vals);
  out.flat = all_zero || (out.slope && out.slope->slope <= bands::kFlatMax);
  return out;
}

CommutatorReport commutator_check(const InitialData& data, const BesovParams& params, int j_min, int j_max,
                                  unsigned threads) {
  return commutator_check(data.u0, data.S0, params, j_min, j_max, data.dealias_fraction, threads);
}

}  // namespace hks
