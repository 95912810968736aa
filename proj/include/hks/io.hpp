#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hks/field.hpp"
#include "hks/probe.hpp"

namespace hks::io {

namespace fs = std::filesystem;

/// "KSF1", then little-endian u32 d, M, N, reserved (0), then N^d little-endian
/// doubles, last axis fastest.
void write_ksf(const fs::path& path, const Field& f);
/// Throws IoError ("file not found: ...") when the path does not exist and on
/// any malformed header or short payload.
Field read_ksf(const fs::path& path);

/// 17 significant digits, so every double survives a text round trip.
std::string format_number(double x);

inline constexpr std::string_view kSweepHeader = "j,t,dev_s,dev_s1,dev_s2,h_s2,block_j,tv0_block_j";
inline constexpr std::string_view kJKHeader = "j,J,K,J1,J2,J3,chain_holds";
inline constexpr std::string_view kCommutatorHeader = "j,value";
inline constexpr std::string_view kLemmaHeader = "name,passed,measured,threshold,detail";
inline constexpr std::string_view kProfileHeader = "j,weighted_norm";
inline constexpr std::string_view kDiagnosticsHeader = "t,dt,mean,max_abs,max_speed";

std::string rates_csv(const RateSweep& sweep);
std::string inflation_csv(const InflationSweep& sweep);
std::string jk_csv(const JKReport& report);
std::string commutator_csv(const CommutatorReport& report);
std::string lemmas_csv(const std::vector<LemmaCheck>& checks);
std::string profile_csv(const BesovResult& result);
std::string diagnostics_csv(const std::vector<StepDiagnostics>& steps);

/// One banded quantity of a summary: passes when lo <= value <= hi.
struct BandCheck {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};
BandCheck band(std::string name, double value, double lo, double hi);
nlohmann::json to_json(const BandCheck& c);

/// Output directory: manifest.json, summary.json, fields/*.ksf, tables/*.csv, report.md.
class ResultStore {
 public:
  /// Creates the layout. An existing non-empty directory is an IoError unless
  /// `force`, in which case its previous contents are removed.
  static ResultStore create(const fs::path& root, bool force);
  /// Opens an existing store for reading.
  static ResultStore open(const fs::path& root);

  const fs::path& root() const { return root_; }
  fs::path field_path(const std::string& name) const;
  fs::path table_path(const std::string& name) const;

  void write_field(const std::string& name, const Field& f) const;
  void write_table(const std::string& name, const std::string& csv) const;
  void write_json(const std::string& name, const nlohmann::json& j) const;
  void write_text(const std::string& name, const std::string& text) const;

 private:
  explicit ResultStore(fs::path root) : root_(std::move(root)) {}
  fs::path root_;
};

nlohmann::json read_json(const fs::path& path);

/// Markdown report from whatever the store holds. Missing pieces are listed
/// and rendered as "no results"; the overall pass flag is the conjunction of
/// every summary-level pass flag.
struct Report {
  std::string markdown;
  bool pass = true;
  std::vector<std::string> missing;
};
Report render_report(const fs::path& store);

}  // namespace hks::io
