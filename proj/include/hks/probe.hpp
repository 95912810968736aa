#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hks/construction.hpp"
#include "hks/error.hpp"
#include "hks/fit.hpp"
#include "hks/littlewood_paley.hpp"
#include "hks/solver.hpp"

namespace hks {

/// Frozen tolerance bands for the slope fits.
namespace bands {
inline constexpr double kRateOneLo = 0.8;
inline constexpr double kRateOneHi = 1.2;
inline constexpr double kRateTwoLo = 1.7;
inline constexpr double kRateTwoHi = 2.3;
inline constexpr double kBlockSlopeLo = 0.7;
inline constexpr double kBlockSlopeHi = 1.3;
inline constexpr double kCubicLo = 2.7;
inline constexpr double kCubicHi = 3.3;
inline constexpr double kFlatMax = 0.3;
inline constexpr double kInflationRatio = 0.25;
inline constexpr double kInflationFloor = 0.01;
inline constexpr double kTaylorRatio = 0.2;
inline constexpr double kAnchorTolerance = 0.01;
}  // namespace bands

/// h(t, u0) = u(t) - u0 + t v0.
Field h_field(const Field& u_t, const Field& u0, const Field& v0, double t);

struct RateRecord {
  double t = 0.0;
  double dev_s = 0.0;   ///< ||u(t) - u0||_{B^s_{p,inf}}
  double dev_s1 = 0.0;  ///< ... in B^{s-1}
  double dev_s2 = 0.0;  ///< ... in B^{s-2}
  double h_s2 = 0.0;    ///< ||h(t)||_{B^{s-2}_{p,inf}}
  double norm_s = 0.0;  ///< ||u(t)||_{B^s_{p,inf}}
};

struct RateSweep {
  std::vector<RateRecord> records;
  SlopeFit slope_dev_s1;
  SlopeFit slope_h_s2;
  double kappa = 0.0;  ///< max_t ||u(t)||_{B^s} / ||u0||_{B^s}
};

/// Evolves u0 independently to every t (in parallel) and fits the log-log
/// slopes of dev_s1 and h_s2. Requires >= 4 times spanning a decade and
/// s - 1 > d/p.
RateSweep rate_sweep(const InitialData& data, const BesovParams& params, std::vector<double> times,
                     const SolverConfig& base, unsigned threads = 0);

struct InflationRecord {
  int j = 0;
  double t_j = 0.0;
  double dev_s = 0.0;         ///< ||u(t_j) - u0||_{B^s_{p,inf}}
  double dev_s1 = 0.0;
  double dev_s2 = 0.0;
  double h_s2 = 0.0;
  double block_j = 0.0;       ///< 2^{js} ||Delta_j (u(t_j) - u0)||_p
  double tv0_block_j = 0.0;   ///< 2^{js} t_j ||Delta_j v0||_p
  double h_block_j = 0.0;     ///< 2^{js} ||Delta_j h(t_j)||_p
  double h_ratio = 0.0;       ///< ||h||_{B^{s-2}} / ||u - u0||_{B^{s-2}}
  int argmax_block = -1;      ///< block attaining dev_s
};

struct InflationSweep {
  std::vector<InflationRecord> records;
  double min_dev = 0.0;
  double max_dev = 0.0;
  double ratio = 0.0;
  double min_block = 0.0;
  double max_block = 0.0;
  double block_ratio = 0.0;
  /// log2-slope in j of 2^{js} ||Delta_j v0||_p = tv0_block_j / t_j.
  SlopeFit slope_v0_profile;
};

/// Raised when an evolve inside a sweep fails; carries the records finished so far.
class SweepAborted : public NumericalError {
 public:
  SweepAborted(const std::string& what, std::vector<InflationRecord> partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const std::vector<InflationRecord>& partial() const { return partial_; }

 private:
  std::vector<InflationRecord> partial_;
};

/// One evolve per j to t_j = eps0 2^-j. Requires 5 <= j_min <= j_max <= n_max - 1
/// and s > 1 + d/p.
InflationSweep inflation_sweep(const InitialData& data, const BesovParams& params, double eps0,
                               int j_min, int j_max, const SolverConfig& base, unsigned threads = 0);

struct Calibration {
  double eps0 = 0.0;
  int halvings = 0;
  double worst_h_ratio = 0.0;
};

/// Halves eps0 (starting at `start`) until every j in [j_min, j_max] evolves
/// without tripping the blow-up guard and with h_ratio < 0.2.
Calibration calibrate_eps0(const InitialData& data, const BesovParams& params, double start, int j_min,
                           int j_max, const SolverConfig& base, unsigned threads = 0, int max_halvings = 30);

struct JKRow {
  int j = 0;
  double J = 0.0;
  double K = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
  double J3 = 0.0;
  /// J >= 2^{-2j} (J1 - J2 - J3), evaluated as computed.
  bool chain_holds = false;
};

/// J, K and the J1/J2/J3 split at block j. Requires 3 <= j <= n_max.
JKRow jk_decomposition(const InitialData& data, const BesovParams& params, int j);

struct OriginAnchor {
  double measured = 0.0;  ///< |(1 - 2u0) d_1 S0 phi(x_1)...phi(x_d)| at x = 0
  double formula = 0.0;   ///< (17/12) phi(0)^{2d} sum_{n=3}^{n_max} 2^{-n(s+1)}
  double c0 = 0.0;        ///< formula / 2
  double delta = 0.0;     ///< largest lattice-ball radius keeping |g| >= |g(0)|/2
};

/// The function g = (1 - 2u0) d_1 S0 phi(x_1)...phi(x_d).
Field anchor_function(const InitialData& data);
OriginAnchor origin_anchor(const InitialData& data);

struct JKReport {
  std::vector<JKRow> rows;
  OriginAnchor anchor;
  SlopeFit slope_J1;
  std::optional<SlopeFit> slope_K;  ///< only when d >= 2
  bool K_identically_zero = false;
};

JKReport jk_report(const InitialData& data, const BesovParams& params, int j_min, int j_max,
                   unsigned threads = 0);

struct CommutatorRow {
  int j = 0;
  double value = 0.0;  ///< 2^{js} ||[Delta_j, (1 - 2u0) grad S0] . grad u0||_p
};

struct CommutatorReport {
  std::vector<CommutatorRow> rows;
  std::optional<SlopeFit> slope;  ///< absent when some value is zero
  bool flat = false;              ///< slope <= 0.3, or all values zero
};

CommutatorReport commutator_check(const Field& u0, const Field& S0, const BesovParams& params, int j_min,
                                  int j_max, double dealias_fraction = 2.0 / 3.0, unsigned threads = 0);
CommutatorReport commutator_check(const InitialData& data, const BesovParams& params, int j_min,
                                  int j_max, unsigned threads = 0);

struct LemmaCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

enum class LemmaFamily { Random, Zero };

/// Runs the Littlewood-Paley property checks (partition, supports, almost
/// orthogonality, reconstruction, Bernstein, multiplier order, embedding,
/// commutator-estimate stability) on fixed pseudo-random fields.
std::vector<LemmaCheck> lemma_suite(const Grid& grid, std::uint64_t seed = 42,
                                    LemmaFamily family = LemmaFamily::Random);
bool all_passed(const std::vector<LemmaCheck>& checks);

/// Throws PreconditionError unless s > 1 + d/p (equivalently s - 1 > d/p).
void require_smoothness(int d, const BesovParams& params, const char* where);

}  // namespace hks
