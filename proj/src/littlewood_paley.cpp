#include "hks/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hks/error.hpp"

namespace hks {
namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;
constexpr double kResolvedMass = 1e-12;

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void check_params(const BesovParams& params) {
  if (!(params.p >= 1.0) || !(params.r >= 1.0)) {
    throw PreconditionError("Besov parameters need p, r in [1, inf]");
  }
}

Field masked_inverse(const SpectralField& F, const std::vector<double>& radii,
                     const DyadicPartition& partition, int j) {
  SpectralField block(F.grid());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double w = partition.weight(j, radii[i]);
    if (w != 0.0) block[i] = F[i] * w;
  }
  return inverse_transform(block);
}

bool spectrum_resolved(const SpectralField& F, const std::vector<double>& radii, double radius) {
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double m = std::norm(F[i]);
    total += m;
    if (radii[i] > radius) tail += m;
  }
  return tail <= kResolvedMass * total;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  const double b = psi(1.0 - t);
  return a / (a + b);
}

double chi_profile(double r) { return smooth_step((kOuter - r) / (kOuter - kInner)); }

double phi_profile(double r) { return chi_profile(r / 2.0) - chi_profile(r); }

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid), j_max_(-1) {
  while (1.5 * std::ldexp(1.0, j_max_ + 1) < grid.nyquist()) ++j_max_;
}

double DyadicPartition::covered_radius() const { return 1.5 * std::ldexp(1.0, j_max_); }

double DyadicPartition::weight(int j, double r) const {
  if (j == -1) return chi_profile(r);
  const double scaled = std::ldexp(r, -j);
  return chi_profile(scaled / 2.0) - chi_profile(scaled);
}

double DyadicPartition::partition_sum(double r) const {
  double s = chi_profile(r);
  for (int j = 0; j <= j_max_; ++j) s += weight(j, r);
  return s;
}

MultiplierSymbol DyadicPartition::symbol(int j) const {
  if (j < -1 || j > j_max_) {
    throw PreconditionError("block index " + std::to_string(j) + " outside [-1, " +
                            std::to_string(j_max_) + "]");
  }
  return symbols::radial([j, self = *this](double r) { return self.weight(j, r); }, 0.0,
                         j == -1 ? "chi" : "phi_" + std::to_string(j));
}

DyadicPartition make_partition(const Grid& grid) {
  DyadicPartition partition(grid);
  if (partition.j_max() < 0) {
    throw PreconditionError("grid too coarse: no dyadic block j >= 0 fits below Nyquist");
  }
  return partition;
}

Field lp_block(const Field& f, int j) {
  const auto partition = make_partition(f.grid());
  return apply_multiplier(f, partition.symbol(j));
}

Field BlockDecomposition::sum() const {
  Field total(blocks.front().grid());
  for (const auto& b : blocks) total += b;
  return total;
}

BlockDecomposition decompose(const Field& f) {
  const auto partition = make_partition(f.grid());
  const auto F = transform(f);
  const auto radii = frequency_magnitudes(f.grid());
  BlockDecomposition out;
  out.j_max = partition.j_max();
  out.resolved = spectrum_resolved(F, radii, partition.covered_radius());
  for (int j = -1; j <= partition.j_max(); ++j) {
    out.blocks.push_back(masked_inverse(F, radii, partition, j));
  }
  return out;
}

BlockNorms block_lp_norms(const Field& f, double p) {
  const auto partition = make_partition(f.grid());
  const auto F = transform(f);
  const auto radii = frequency_magnitudes(f.grid());
  BlockNorms out;
  out.resolved = spectrum_resolved(F, radii, partition.covered_radius());
  for (int j = -1; j <= partition.j_max(); ++j) {
    out.norms.push_back(lp_norm(masked_inverse(F, radii, partition, j), p));
  }
  return out;
}

BesovResult besov_from_blocks(const BlockNorms& blocks, const BesovParams& params) {
  check_params(params);
  BesovResult out;
  out.resolved = blocks.resolved;
  double acc = 0.0;
  for (std::size_t idx = 0; idx < blocks.norms.size(); ++idx) {
    const int j = static_cast<int>(idx) - 1;
    const double weighted = std::exp2(params.s * j) * blocks.norms[idx];
    out.profile.push_back(weighted);
    if (std::isinf(params.r)) {
      acc = std::max(acc, weighted);
    } else {
      acc += std::pow(weighted, params.r);
    }
  }
  out.norm = std::isinf(params.r) ? acc : std::pow(acc, 1.0 / params.r);
  return out;
}

BesovResult besov_norm(const Field& f, const BesovParams& params) {
  check_params(params);
  return besov_from_blocks(block_lp_norms(f, params.p), params);
}

int BesovResult::argmax_block() const {
  const auto it = std::max_element(profile.begin(), profile.end());
  return static_cast<int>(it - profile.begin()) - 1;
}

Field commutator(int j, std::span<const Field> v, const Field& f, double fraction) {
  const Grid& g = f.grid();
  if (static_cast<int>(v.size()) != g.dim()) {
    throw PreconditionError("commutator: velocity has " + std::to_string(v.size()) +
                            " components on a " + std::to_string(g.dim()) + "-d grid");
  }
  for (const auto& vi : v) require_same_grid(vi.grid(), g, "commutator");
  const auto partition = make_partition(g);
  const auto block = partition.symbol(j);
  Field transported(g);
  Field localized(g);
  for (int a = 0; a < g.dim(); ++a) {
    const auto df = partial(f, a);
    transported += dealiased_product(v[a], df, fraction);
    localized += dealiased_product(v[a], apply_multiplier(df, block), fraction);
  }
  return apply_multiplier(transported, block) - localized;
}

}  // namespace hks
