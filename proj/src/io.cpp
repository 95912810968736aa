#include "hks/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hks/error.hpp"

namespace hks::io {
namespace {

constexpr std::array<char, 4> kMagic{'K', 'S', 'F', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const fs::path& path) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw IoError("truncated KSF1 file: " + path.string());
  }
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits + 1, x);
  return buf;
}

std::string json_number(const nlohmann::json& j) {
  if (j.is_number()) return fixed(j.get<double>(), 6);
  if (j.is_null()) return "n/a";
  return j.dump();
}

}  // namespace

void write_ksf(const fs::path& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const Grid& g = f.grid();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.multiplier()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put_le<std::uint32_t>(out, 0u);
  for (std::size_t i = 0; i < f.size(); ++i) put_le<double>(out, f[i]);
  if (!out) throw IoError("write failed: " + path.string());
}

Field read_ksf(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError("not a KSF1 file: " + path.string());
  }
  const auto d = get_le<std::uint32_t>(in, path);
  const auto m = get_le<std::uint32_t>(in, path);
  const auto n = get_le<std::uint32_t>(in, path);
  const auto reserved = get_le<std::uint32_t>(in, path);
  if (reserved != 0) throw IoError("KSF1 reserved word is not zero: " + path.string());
  Grid grid;
  try {
    grid = make_grid(static_cast<int>(d), static_cast<int>(m), static_cast<int>(n));
  } catch (const PreconditionError& e) {
    throw IoError("bad KSF1 header in " + path.string() + ": " + e.what());
  }
  Field f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = get_le<double>(in, path);
  if (in.peek() != std::char_traits<char>::eof()) throw IoError("trailing bytes in " + path.string());
  return f;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string rates_csv(const RateSweep& sweep) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& r : sweep.records) {
    out += "," + format_number(r.t) + "," + format_number(r.dev_s) + "," + format_number(r.dev_s1) + "," +
           format_number(r.dev_s2) + "," + format_number(r.h_s2) + ",,\n";
  }
  return out;
}

std::string inflation_csv(const InflationSweep& sweep) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& r : sweep.records) {
    out += std::to_string(r.j) + "," + format_number(r.t_j) + "," + format_number(r.dev_s) + "," +
           format_number(r.dev_s1) + "," + format_number(r.dev_s2) + "," + format_number(r.h_s2) + "," +
           format_number(r.block_j) + "," + format_number(r.tv0_block_j) + "\n";
  }
  return out;
}

std::string jk_csv(const JKReport& report) {
  std::string out(kJKHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += std::to_string(r.j) + "," + format_number(r.J) + "," + format_number(r.K) + "," +
           format_number(r.J1) + "," + format_number(r.J2) + "," + format_number(r.J3) + "," +
           (r.chain_holds ? "1" : "0") + "\n";
  }
  return out;
}

std::string commutator_csv(const CommutatorReport& report) {
  std::string out(kCommutatorHeader);
  out += '\n';
  for (const auto& r : report.rows) out += std::to_string(r.j) + "," + format_number(r.value) + "\n";
  return out;
}

std::string lemmas_csv(const std::vector<LemmaCheck>& checks) {
  std::string out(kLemmaHeader);
  out += '\n';
  for (const auto& c : checks) {
    out += csv_quote(c.name) + "," + (c.passed ? "1" : "0") + "," + format_number(c.measured) + "," +
           format_number(c.threshold) + "," + csv_quote(c.detail) + "\n";
  }
  return out;
}

std::string profile_csv(const BesovResult& result) {
  std::string out(kProfileHeader);
  out += '\n';
  for (std::size_t i = 0; i < result.profile.size(); ++i) {
    out += std::to_string(static_cast<int>(i) - 1) + "," + format_number(result.profile[i]) + "\n";
  }
  return out;
}

std::string diagnostics_csv(const std::vector<StepDiagnostics>& steps) {
  std::string out(kDiagnosticsHeader);
  out += '\n';
  for (const auto& s : steps) {
    out += format_number(s.t) + "," + format_number(s.dt) + "," + format_number(s.mean) + "," +
           format_number(s.max_abs) + "," + format_number(s.max_speed) + "\n";
  }
  return out;
}

BandCheck band(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, hi, value >= lo && value <= hi};
}

nlohmann::json to_json(const BandCheck& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["lo"] = c.lo;
  j["hi"] = std::isinf(c.hi) ? nlohmann::json(nullptr) : nlohmann::json(c.hi);
  j["pass"] = c.pass;
  return j;
}

ResultStore ResultStore::create(const fs::path& root, bool force) {
  if (fs::exists(root)) {
    if (!fs::is_directory(root)) throw IoError(root.string() + " exists and is not a directory");
    if (!fs::is_empty(root)) {
      if (!force) throw IoError("output directory " + root.string() + " already exists (use --force)");
      fs::remove_all(root);
    }
  }
  fs::create_directories(root / "fields");
  fs::create_directories(root / "tables");
  return ResultStore(root);
}

ResultStore ResultStore::open(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("file not found: " + root.string());
  return ResultStore(root);
}

fs::path ResultStore::field_path(const std::string& name) const { return root_ / "fields" / (name + ".ksf"); }
fs::path ResultStore::table_path(const std::string& name) const { return root_ / "tables" / (name + ".csv"); }

void ResultStore::write_field(const std::string& name, const Field& f) const { write_ksf(field_path(name), f); }
void ResultStore::write_table(const std::string& name, const std::string& csv) const {
  write_file(table_path(name), csv);
}
void ResultStore::write_json(const std::string& name, const nlohmann::json& j) const {
  write_file(root_ / name, j.dump(2) + "\n");
}
void ResultStore::write_text(const std::string& name, const std::string& text) const {
  write_file(root_ / name, text);
}

nlohmann::json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Report render_report(const fs::path& store) {
  Report rep;
  std::ostringstream md;
  md << "# Results\n\n";

  md << "## Configuration\n\n";
  const fs::path manifest = store / "manifest.json";
  if (fs::exists(manifest)) {
    md << "```json\n" << read_json(manifest).dump(2) << "\n```\n\n";
  } else {
    md << "no results\n\n";
    rep.missing.push_back("manifest.json");
  }

  nlohmann::json summary;
  const fs::path summary_path = store / "summary.json";
  if (fs::exists(summary_path)) {
    summary = read_json(summary_path);
  } else {
    rep.missing.push_back("summary.json");
  }
  const nlohmann::json sections =
      summary.contains("sections") ? summary["sections"] : nlohmann::json::object();

  md << "## Norms\n\n";
  bool any_norms = false;
  for (const auto& [kind, sec] : sections.items()) {
    if (!sec.contains("norms")) continue;
    any_norms = true;
    md << "| field | s | p | r | norm | argmax block | resolved |\n|---|---|---|---|---|---|---|\n";
    for (const auto& n : sec["norms"]) {
      md << "| " << n.value("field", "") << " | " << json_number(n["s"]) << " | " << json_number(n["p"])
         << " | " << json_number(n["r"]) << " | " << json_number(n["norm"]) << " | "
         << n.value("argmax_block", -2) << " | " << (n.value("resolved", false) ? "yes" : "no") << " |\n";
    }
    md << "\n";
  }
  if (!any_norms) md << "no results\n\n";

  md << "## Checks\n\n";
  if (sections.empty()) md << "no results\n\n";
  for (const auto& [kind, sec] : sections.items()) {
    const bool pass = sec.value("pass", false);
    rep.pass = rep.pass && pass;
    md << "### " << kind << ": " << (pass ? "PASS" : "FAIL") << "\n\n";
    for (const auto& c : sec.value("checks", nlohmann::json::array())) {
      md << "- " << c.value("name", "") << " = " << json_number(c["value"]) << ", band ["
         << (c["lo"].is_null() ? "-inf" : json_number(c["lo"])) << ", " << (c["hi"].is_null() ? "inf" : json_number(c["hi"])) << "]: "
         << (c.value("pass", false) ? "pass" : "FAIL") << "\n";
    }
    for (const char* key : {"min_dev", "max_dev", "ratio", "c0", "delta"}) {
      if (sec.contains(key) && !sec[key].is_null()) md << "- " << key << " = " << json_number(sec[key]) << "\n";
    }
    md << "\n";
    for (const auto& table : sec.value("tables", nlohmann::json::array())) {
      const std::string name = table.get<std::string>();
      if (!fs::exists(store / "tables" / (name + ".csv"))) rep.missing.push_back("tables/" + name + ".csv");
    }
  }

  md << "## Data\n\n";
  bool any_table = false;
  if (fs::is_directory(store / "tables")) {
    std::vector<fs::path> tables;
    for (const auto& e : fs::directory_iterator(store / "tables")) {
      if (e.path().extension() == ".csv") tables.push_back(e.path());
    }
    std::sort(tables.begin(), tables.end());
    for (const auto& t : tables) {
      any_table = true;
      md << "### " << t.stem().string() << "\n\n```csv\n" << read_file(t) << "```\n\n";
    }
  }
  if (!any_table) md << "no results\n\n";

  if (!rep.missing.empty()) {
    md << "## Missing\n\n";
    for (const auto& m : rep.missing) md << "- " << m << "\n";
    md << "\n";
  }
  if (sections.empty()) rep.pass = true;
  md << "## Overall\n\n" << (rep.pass ? "PASS" : "FAIL") << "\n";
  rep.markdown = md.str();
  return rep;
}

}  // namespace hks::io
