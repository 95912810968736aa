#pragma once

#include <span>
#include <vector>

#include "hks/field.hpp"
#include "hks/spectral.hpp"

namespace hks {

/// Smooth step h(t) = psi(t) / (psi(t) + psi(1 - t)), psi(t) = exp(-1/t) for
/// t > 0 and 0 otherwise. h = 0 for t <= 0, h = 1 for t >= 1, C-infinity.
double smooth_step(double t);

/// Radial low-frequency cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3.
double chi_profile(double r);
/// Annulus cutoff chi(r/2) - chi(r): supported in [3/4, 8/3], 1 on [4/3, 3/2].
double phi_profile(double r);

/// Nonhomogeneous dyadic partition of unity on a grid. Block j = -1 is
/// chi(D); block j >= 0 is phi(2^-j D). The telescoping construction makes
/// chi + sum_{j<=J} phi(2^-j .) equal chi(2^-(J+1) .) identically.
class DyadicPartition {
 public:
  explicit DyadicPartition(const Grid& grid);

  const Grid& grid() const { return grid_; }
  /// Largest j with (3/2) 2^j strictly below the per-axis Nyquist frequency.
  int j_max() const { return j_max_; }
  /// Frequency below which the partition sums to one, (3/2) 2^j_max.
  double covered_radius() const;

  /// Weight of block j at frequency magnitude r.
  double weight(int j, double r) const;
  /// chi(r) + sum_{j=0}^{j_max} phi(2^-j r).
  double partition_sum(double r) const;
  MultiplierSymbol symbol(int j) const;

 private:
  Grid grid_;
  int j_max_;
};

/// Throws PreconditionError when the grid cannot resolve block 0.
DyadicPartition make_partition(const Grid& grid);

/// Delta_j f; throws PreconditionError unless -1 <= j <= j_max.
Field lp_block(const Field& f, int j);

struct BlockDecomposition {
  /// blocks[j + 1] = Delta_j f for j = -1 .. j_max.
  std::vector<Field> blocks;
  int j_max = -1;
  /// True when the spectral mass above (3/2) 2^j_max is <= 1e-12 of the total.
  bool resolved = true;

  const Field& block(int j) const { return blocks.at(static_cast<std::size_t>(j + 1)); }
  Field sum() const;
};

BlockDecomposition decompose(const Field& f);

struct BesovParams {
  double s = 2.0;
  double p = 2.0;
  double r = kInf;
};

struct BesovResult {
  double norm = 0.0;
  /// profile[j + 1] = 2^{sj} ||Delta_j f||_{L^p}, j = -1 .. j_max.
  std::vector<double> profile;
  bool resolved = true;

  double at(int j) const { return profile.at(static_cast<std::size_t>(j + 1)); }
  /// Block index attaining the largest profile entry.
  int argmax_block() const;
};

/// ||Delta_j f||_{L^p} for j = -1 .. j_max (index j + 1), plus the resolved flag.
struct BlockNorms {
  std::vector<double> norms;
  bool resolved = true;
};
BlockNorms block_lp_norms(const Field& f, double p);

/// Combines unweighted block norms into the B^s_{p,r} norm.
BesovResult besov_from_blocks(const BlockNorms& blocks, const BesovParams& params);
BesovResult besov_norm(const Field& f, const BesovParams& params);

/// [Delta_j, v] . grad f = Delta_j(v . grad f) - v . Delta_j grad f, with every
/// product dealiased at `fraction`. v holds one field per spatial axis.
Field commutator(int j, std::span<const Field> v, const Field& f, double fraction = 2.0 / 3.0);

}  // namespace hks
