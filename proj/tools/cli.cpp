#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include <CLI11.hpp>

#include "hks/construction.hpp"
#include "hks/error.hpp"
#include "hks/io.hpp"
#include "hks/probe.hpp"
#include "hks/solver.hpp"

namespace hks::cli {
namespace {

using nlohmann::json;
constexpr double kNoLimit = std::numeric_limits<double>::infinity();

struct Globals {
  std::uint64_t seed = 42;
  unsigned threads = 0;
  bool force = false;
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1.0)) throw PreconditionError("invalid exponent '" + text + "'");
  return v;
}

std::string num(double x) { return io::format_number(x); }

std::vector<double> default_times() {
  std::vector<double> t;
  for (int k = 0; k <= 4; ++k) t.push_back(1e-4 * std::pow(10.0, k / 2.0));
  return t;
}

int default_plateau_points(int d) { return d == 1 ? 4 : 1; }

InitialData build_data(int d, int m, int n, double s, int n_max) {
  const Grid grid = make_grid(d, m, n);
  const Bump bump = make_bump(grid, default_plateau_points(d));
  return make_initial_data(s, n_max, bump, grid);
}

json section(const std::vector<io::BandCheck>& checks) {
  json sec;
  sec["checks"] = json::array();
  bool pass = true;
  for (const auto& c : checks) {
    sec["checks"].push_back(io::to_json(c));
    pass = pass && c.pass;
  }
  sec["pass"] = pass;
  return sec;
}

json norm_entry(const std::string& field, const BesovResult& r, const BesovParams& params) {
  return {{"field", field},          {"s", params.s},
          {"p", params.p},           {"r", params.r},
          {"norm", r.norm},          {"argmax_block", r.argmax_block()},
          {"resolved", r.resolved}};
}

// Everything a run writes besides its tables: manifest.json (resolved config
// and a replay command line) and summary.json.
struct RunRecord {
  std::vector<std::string> command;
  json config = json::object();
  std::vector<std::string> replay;
  json sections = json::object();

  void set(const std::string& flag, const std::string& text, json value) {
    config[flag] = std::move(value);
    replay.push_back("--" + flag);
    replay.push_back(text);
  }
  void set(const std::string& flag, double v) { set(flag, num(v), v); }
  void set_int(const std::string& flag, long long v) { set(flag, std::to_string(v), v); }
  void set_list(const std::string& flag, const std::vector<double>& v) {
    std::string text;
    for (std::size_t i = 0; i < v.size(); ++i) text += (i ? "," : "") + num(v[i]);
    set(flag, text, v);
  }
};

bool finish(const io::ResultStore& store, RunRecord& rec, const Globals& g,
            const std::vector<std::string>& argv) {
  rec.set("seed", std::to_string(g.seed), g.seed);
  rec.set_int("threads", g.threads);
  json manifest;
  manifest["program"] = "hks";
  manifest["format"] = 1;
  manifest["command"] = rec.command;
  manifest["argv"] = argv;
  manifest["config"] = rec.config;
  std::vector<std::string> replay = rec.command;
  replay.insert(replay.end(), rec.replay.begin(), rec.replay.end());
  manifest["replay"] = replay;
  store.write_json("manifest.json", manifest);

  json summary;
  summary["sections"] = rec.sections;
  json slopes = json::object();
  bool pass = true;
  for (const auto& [kind, sec] : rec.sections.items()) {
    pass = pass && sec.value("pass", false);
    if (sec.contains("slopes")) slopes.update(sec["slopes"]);
  }
  summary["slopes"] = slopes;
  for (const char* key : {"min_dev", "max_dev", "c0", "delta"}) {
    summary[key] = nullptr;
    for (const auto& [kind, sec] : rec.sections.items()) {
      if (sec.contains(key)) summary[key] = sec[key];
    }
  }
  summary["pass"] = pass;
  store.write_json("summary.json", summary);
  return pass;
}

struct ProbeArgs {
  int d = 1;
  int m = 1;
  int n = 16384;
  double s = 2.0;
  std::string p = "2";
  int n_max = 8;
  std::optional<double> eps0;
  std::optional<int> j_min;
  std::optional<int> j_max;
  std::vector<double> times;
  double cfl = 0.4;
  std::string outdir;
};

json probe_rates(const InitialData& data, const BesovParams& params, const ProbeArgs& a, const Globals& g,
                 const io::ResultStore& store, RunRecord& rec) {
  const auto times = a.times.empty() ? default_times() : a.times;
  rec.set_list("times", times);
  SolverConfig base;
  base.cfl = a.cfl;
  const auto sweep = rate_sweep(data, params, times, base, g.threads);
  store.write_table("rates", io::rates_csv(sweep));
  json sec = section({io::band("slope_dev_s1", sweep.slope_dev_s1.slope, bands::kRateOneLo, bands::kRateOneHi),
                      io::band("slope_h_s2", sweep.slope_h_s2.slope, bands::kRateTwoLo, bands::kRateTwoHi)});
  sec["slopes"] = {{"slope_dev_s1", sweep.slope_dev_s1.slope}, {"slope_h_s2", sweep.slope_h_s2.slope}};
  sec["kappa"] = sweep.kappa;
  sec["tables"] = {"rates"};
  return sec;
}

json probe_inflation(const InitialData& data, const BesovParams& params, const ProbeArgs& a, const Globals& g,
                     const io::ResultStore& store, RunRecord& rec) {
  const int j_min = a.j_min.value_or(5);
  const int j_max = a.j_max.value_or(data.n_max - 1);
  rec.set_int("jmin", j_min);
  rec.set_int("jmax", j_max);
  SolverConfig base;
  base.cfl = a.cfl;
  json sec;
  double eps0 = 0.0;
  if (a.eps0) {
    eps0 = *a.eps0;
    rec.set("eps0", eps0);
    sec["calibrated"] = false;
  } else {
    const auto cal = calibrate_eps0(data, params, 1.0, j_min, j_max, base, g.threads);
    eps0 = cal.eps0;
    rec.config["eps0"] = nullptr;
    sec["calibrated"] = true;
    sec["halvings"] = cal.halvings;
    sec["worst_h_ratio"] = cal.worst_h_ratio;
  }
  InflationSweep sweep;
  try {
    sweep = inflation_sweep(data, params, eps0, j_min, j_max, base, g.threads);
  } catch (const SweepAborted& e) {
    InflationSweep partial;
    partial.records = e.partial();
    store.write_table("inflation", io::inflation_csv(partial));
    json failed = section({});
    failed["pass"] = false;
    failed["error"] = e.what();
    failed["eps0"] = eps0;
    failed["tables"] = {"inflation"};
    return failed;
  }
  store.write_table("inflation", io::inflation_csv(sweep));
  const double u0_norm = besov_norm(data.u0, params).norm;
  const double floor_ratio = u0_norm > 0.0 ? sweep.min_dev / u0_norm : 0.0;
  json out = section({io::band("min_over_max_dev", sweep.ratio, bands::kInflationRatio, kNoLimit),
                      io::band("min_dev_over_u0_norm", floor_ratio, bands::kInflationFloor, kNoLimit),
                      io::band("slope_v0_profile", sweep.slope_v0_profile.slope, bands::kBlockSlopeLo,
                               bands::kBlockSlopeHi)});
  out.update(sec);
  out["eps0"] = eps0;
  out["min_dev"] = sweep.min_dev;
  out["max_dev"] = sweep.max_dev;
  out["ratio"] = sweep.ratio;
  out["u0_norm"] = u0_norm;
  out["block_ratio"] = sweep.block_ratio;
  json argmax = json::array();
  for (const auto& r : sweep.records) argmax.push_back(r.argmax_block);
  out["argmax_blocks"] = argmax;
  out["slopes"] = {{"slope_v0_profile", sweep.slope_v0_profile.slope}};
  out["tables"] = {"inflation"};
  return out;
}

json probe_jk(const InitialData& data, const BesovParams& params, const ProbeArgs& a, const Globals& g,
              const io::ResultStore& store, RunRecord& rec) {
  const int j_min = a.j_min.value_or(5);
  const int j_max = a.j_max.value_or(data.n_max);
  rec.set_int("jmin", j_min);
  rec.set_int("jmax", j_max);
  const auto report = jk_report(data, params, j_min, j_max, g.threads);
  const auto comm = commutator_check(data, params, j_min, j_max, g.threads);
  store.write_table("jk", io::jk_csv(report));
  store.write_table("commutator", io::commutator_csv(comm));

  std::vector<io::BandCheck> checks;
  checks.push_back(io::band("slope_J1", report.slope_J1.slope, bands::kCubicLo, bands::kCubicHi));
  if (data.grid.dim() == 1) {
    double k_max = 0.0;
    for (const auto& r : report.rows) k_max = std::max(k_max, r.K);
    checks.push_back(io::band("K_max", k_max, 0.0, 0.0));
  } else {
    const double slope_k = report.slope_K ? report.slope_K->slope : 0.0;
    checks.push_back(io::band("slope_K", slope_k, -kNoLimit, bands::kFlatMax));
  }
  const double comm_slope = comm.slope ? comm.slope->slope : 0.0;
  io::BandCheck flat = io::band("commutator_slope", comm_slope, -kNoLimit, bands::kFlatMax);
  flat.pass = comm.flat;
  checks.push_back(flat);
  const auto& anchor = report.anchor;
  const double anchor_err =
      anchor.formula > 0.0 ? std::abs(anchor.measured - anchor.formula) / anchor.formula : kNoLimit;
  checks.push_back(io::band("anchor_relative_error", anchor_err, 0.0, bands::kAnchorTolerance));

  json sec = section(checks);
  sec["c0"] = anchor.c0;
  sec["delta"] = anchor.delta;
  sec["anchor_measured"] = anchor.measured;
  sec["anchor_formula"] = anchor.formula;
  bool chain = true;
  for (const auto& r : report.rows) chain = chain && r.chain_holds;
  sec["chain_holds"] = chain;
  sec["slopes"] = {{"slope_J1", report.slope_J1.slope}, {"commutator_slope", comm_slope}};
  if (report.slope_K) sec["slopes"]["slope_K"] = report.slope_K->slope;
  sec["tables"] = {"jk", "commutator"};
  return sec;
}

json run_lemmas(const Grid& grid, const Globals& g, const io::ResultStore* store, std::ostream& out) {
  const auto checks = lemma_suite(grid, g.seed);
  std::vector<io::BandCheck> bandc;
  out << "check                              result  measured     threshold\n";
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-7s %-12.4e %-12.4e\n", c.name.c_str(), c.passed ? "pass" : "FAIL",
                  c.measured, c.threshold);
    out << line;
    io::BandCheck b{c.name, c.measured, -kNoLimit, c.threshold, c.passed};
    bandc.push_back(b);
  }
  out << (all_passed(checks) ? "all checks passed\n" : "some checks FAILED\n");
  if (store) store->write_table("lemmas", io::lemmas_csv(checks));
  json sec = section(bandc);
  sec["tables"] = {"lemmas"};
  return sec;
}

int cmd_probe(const std::string& kind, const ProbeArgs& a, const Globals& g,
              const std::vector<std::string>& argv, std::ostream& out) {
  const auto store = io::ResultStore::create(a.outdir, g.force);
  RunRecord rec;
  rec.command = {"probe", kind};
  rec.set_int("d", a.d);
  rec.set_int("m", a.m);
  rec.set_int("n", a.n);
  if (kind == "lemmas") {
    const Grid grid = make_grid(a.d, a.m, a.n);
    rec.sections["lemmas"] = run_lemmas(grid, g, &store, out);
  } else {
    const BesovParams params{a.s, parse_exponent(a.p), kInf};
    rec.set("s", a.s);
    rec.set("p", a.p, a.p);
    rec.set_int("nmax", a.n_max);
    rec.set("cfl", a.cfl);
    const auto data = build_data(a.d, a.m, a.n, a.s, a.n_max);
    if (kind == "rates") {
      rec.sections["rates"] = probe_rates(data, params, a, g, store, rec);
    } else if (kind == "inflation") {
      rec.sections["inflation"] = probe_inflation(data, params, a, g, store, rec);
    } else if (kind == "calibrate") {
      const int j_min = a.j_min.value_or(5);
      const int j_max = a.j_max.value_or(a.n_max - 1);
      rec.set_int("jmin", j_min);
      rec.set_int("jmax", j_max);
      SolverConfig base;
      base.cfl = a.cfl;
      const double start = a.eps0.value_or(1.0);
      rec.set("eps0", start);
      const auto cal = calibrate_eps0(data, params, start, j_min, j_max, base, g.threads);
      json sec = section({io::band("worst_h_ratio", cal.worst_h_ratio, 0.0, bands::kTaylorRatio)});
      sec["eps0"] = cal.eps0;
      sec["halvings"] = cal.halvings;
      rec.sections["calibrate"] = sec;
      out << "eps0 = " << num(cal.eps0) << " after " << cal.halvings << " halvings\n";
    } else {
      rec.sections["jk"] = probe_jk(data, params, a, g, store, rec);
    }
  }
  const bool pass = finish(store, rec, g, argv);
  const auto report = io::render_report(store.root());
  store.write_text("report.md", report.markdown);
  for (const auto& [name, sec] : rec.sections.items()) {
    for (const auto& c : sec.value("checks", json::array())) {
      if (name == "lemmas") continue;
      out << name << ": " << c["name"].get<std::string>() << " = " << (c["value"].is_number() ? num(c["value"].get<double>()) : "inf") << " "
          << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    }
    if (sec.contains("error")) out << name << ": " << sec["error"].get<std::string>() << "\n";
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_construct(int d, int m, int n, double s, int n_max, const std::string& outdir, const Globals& g,
                  const std::vector<std::string>& argv, std::ostream& out) {
  const auto data = build_data(d, m, n, s, n_max);
  const auto store = io::ResultStore::create(outdir, g.force);
  store.write_field("u0", data.u0);
  store.write_field("S0", data.S0);
  store.write_field("v0", data.v0);
  RunRecord rec;
  rec.command = {"construct"};
  rec.set_int("d", d);
  rec.set_int("m", m);
  rec.set_int("n", n);
  rec.set("s", s);
  rec.set_int("nmax", n_max);

  json norms = json::array();
  json sidecar_norms = json::object();
  bool resolved = true;
  for (const auto& [label, p] : {std::pair{"1", 1.0}, std::pair{"2", 2.0}, std::pair{"inf", kInf}}) {
    const BesovParams params{s, p, kInf};
    const auto r = besov_norm(data.u0, params);
    resolved = resolved && r.resolved;
    norms.push_back(norm_entry("u0", r, params));
    sidecar_norms[std::string("p") + label] = r.norm;
    store.write_table(std::string("u0_profile_p") + label, io::profile_csv(r));
    out << "||u0||_{B^" << num(s) << "_{" << label << ",inf}} = " << num(r.norm) << "\n";
  }
  json sec = section({io::band("u0_resolved", resolved ? 1.0 : 0.0, 1.0, 1.0)});
  sec["norms"] = norms;
  sec["tables"] = {"u0_profile_p1", "u0_profile_p2", "u0_profile_pinf"};
  rec.sections["construct"] = sec;
  store.write_json("construct.json",
                   {{"d", d}, {"M", m}, {"N", n}, {"s", s}, {"n_max", n_max}, {"norms", sidecar_norms}});
  const bool pass = finish(store, rec, g, argv);
  store.write_text("report.md", io::render_report(store.root()).markdown);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_norms(const std::string& in, double s, const std::string& p, const std::string& r, std::ostream& out) {
  const Field f = io::read_ksf(in);
  const BesovParams params{s, parse_exponent(p), parse_exponent(r)};
  const auto res = besov_norm(f, params);
  out << "norm = " << num(res.norm) << "\n";
  out << "argmax_block = " << res.argmax_block() << "\n";
  out << "resolved = " << (res.resolved ? "yes" : "no") << "\n";
  out << io::profile_csv(res);
  return kExitOk;
}

int cmd_evolve(const std::string& in, double T, std::optional<double> dt, double cfl, double eps,
               std::vector<double> snapshots, const std::string& outdir, const Globals& g,
               const std::vector<std::string>& argv, std::ostream& out) {
  const Field u0 = io::read_ksf(in);
  SolverConfig cfg;
  cfg.T = T;
  cfg.dt = dt;
  cfg.cfl = cfl;
  cfg.eps = eps;
  std::sort(snapshots.begin(), snapshots.end());
  cfg.snapshot_times = snapshots;
  cfg.validate();
  const auto store = io::ResultStore::create(outdir, g.force);
  RunRecord rec;
  rec.command = {"evolve"};
  rec.set("in", in, in);
  rec.set("t", T);
  if (dt) {
    rec.set("dt", *dt);
  } else {
    rec.set("cfl", cfl);
  }
  rec.set("eps", eps);
  if (!snapshots.empty()) rec.set_list("snapshots", snapshots);

  const auto traj = evolve(u0, cfg);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu", i);
    store.write_field(name, traj.states[i]);
  }
  store.write_table("diagnostics", io::diagnostics_csv(traj.steps));
  const double scale = std::max(u0.max_abs(), std::numeric_limits<double>::min());
  const double drift = std::abs(traj.final_state().mean() - u0.mean()) / scale;
  json sec = section({io::band("mass_drift", drift, 0.0, 1e-12)});
  sec["snapshot_times"] = traj.times;
  sec["steps"] = traj.steps.size();
  sec["final_max_abs"] = traj.final_state().max_abs();
  sec["tables"] = {"diagnostics"};
  rec.sections["evolve"] = sec;
  const bool pass = finish(store, rec, g, argv);
  store.write_text("report.md", io::render_report(store.root()).markdown);
  out << "steps = " << traj.steps.size() << ", snapshots = " << traj.states.size()
      << ", mass drift = " << num(drift) << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hks: Littlewood-Paley probes for the hyperbolic Keller-Segel model", "hks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for the pseudo-random test fields")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--force", g.force, "Overwrite an existing output directory");

  int d = 1;
  int m = 1;
  int n = 16384;
  double s = 2.0;
  int n_max = 8;
  std::string outdir;

  auto* construct = app.add_subcommand("construct", "Build u0, S0, v0 and write them as KSF1 fields");
  construct->add_option("--d", d)->capture_default_str();
  construct->add_option("--m", m)->capture_default_str();
  construct->add_option("--n", n)->capture_default_str();
  construct->add_option("--s", s)->capture_default_str();
  construct->add_option("--nmax", n_max)->capture_default_str();
  construct->add_option("--outdir", outdir)->required();

  std::string in;
  std::string p = "2";
  std::string r = "inf";
  auto* norms = app.add_subcommand("norms", "Besov norm and block profile of a KSF1 field");
  norms->add_option("--in", in)->required();
  norms->add_option("--s", s)->capture_default_str();
  norms->add_option("--p", p)->capture_default_str();
  norms->add_option("--r", r)->capture_default_str();

  double T = 0.0;
  std::optional<double> dt;
  double cfl = 0.4;
  double eps = 0.0;
  std::vector<double> snapshots;
  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate from a KSF1 initial state");
  evolve_cmd->add_option("--in", in)->required();
  evolve_cmd->add_option("--t", T)->required();
  auto* dt_opt = evolve_cmd->add_option("--dt", dt);
  auto* cfl_opt = evolve_cmd->add_option("--cfl", cfl)->capture_default_str();
  dt_opt->excludes(cfl_opt);
  evolve_cmd->add_option("--eps", eps)->capture_default_str();
  evolve_cmd->add_option("--snapshots", snapshots)->delimiter(',');
  evolve_cmd->add_option("--outdir", outdir)->required();

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe", "Run a probe sweep and write a result store");
  probe->require_subcommand(1);
  std::string kind;
  const std::pair<const char*, const char*> kinds[] = {
      {"rates", "Slopes of the deviation and Taylor remainder in t"},
      {"inflation", "Deviation at t_j = eps0 2^-j"},
      {"jk", "Per-block lower-bound terms J, J1, J2, J3, K"},
      {"lemmas", "Harmonic-analysis checks on the probe grid"},
      {"calibrate", "Largest admissible eps0, halving from 1"}};
  for (const auto& [k, help] : kinds) {
    auto* sub = probe->add_subcommand(k, help);
    sub->fallthrough();
    sub->callback([&kind, k] { kind = k; });
  }
  probe->fallthrough();
  probe->add_option("--d", pa.d, "Dimension")->capture_default_str();
  probe->add_option("--m", pa.m, "Box scale M, domain [-12 pi M, 12 pi M)^d")->capture_default_str();
  probe->add_option("--n", pa.n, "Points per axis")->capture_default_str();
  probe->add_option("--s", pa.s, "Regularity index")->capture_default_str();
  probe->add_option("--p", pa.p, "Integrability (number or inf)")->capture_default_str();
  probe->add_option("--nmax", pa.n_max, "Highest packet in u0")->capture_default_str();
  probe->add_option("--eps0", pa.eps0, "Fixed eps0; calibrated when omitted");
  probe->add_option("--jmin", pa.j_min, "First block");
  probe->add_option("--jmax", pa.j_max, "Last block");
  probe->add_option("--times", pa.times, "Comma-separated times for rates")->delimiter(',');
  probe->add_option("--cfl", pa.cfl, "Courant factor")->capture_default_str();
  probe->add_option("--outdir", pa.outdir, "Result store directory")->required();

  std::string store_dir;
  auto* report = app.add_subcommand("report", "Render report.md for a result store");
  report->add_option("--store", store_dir)->required();

  auto* lemmas = app.add_subcommand("lemmas", "Run the harmonic-analysis check suite");
  lemmas->add_option("--d", d)->capture_default_str();
  lemmas->add_option("--m", m)->capture_default_str();
  lemmas->add_option("--n", n)->capture_default_str();
  lemmas->add_option("--outdir", outdir);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(d, m, n, s, n_max, outdir, g, args, out);
    if (*norms) return cmd_norms(in, s, p, r, out);
    if (*evolve_cmd) {
      return cmd_evolve(in, T, dt, cfl, eps, snapshots, outdir, g, args, out);
    }
    if (*probe) return cmd_probe(kind, pa, g, args, out);
    if (*report) {
      const auto store = io::ResultStore::open(store_dir);
      const auto rep = io::render_report(store.root());
      store.write_text("report.md", rep.markdown);
      out << rep.markdown;
      return rep.pass ? kExitOk : kExitCheckFailed;
    }
    if (*lemmas) {
      const Grid grid = make_grid(d, m, n);
      if (outdir.empty()) {
        const auto sec = run_lemmas(grid, g, nullptr, out);
        return sec["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
      }
      const auto store = io::ResultStore::create(outdir, g.force);
      RunRecord rec;
      rec.command = {"lemmas"};
      rec.set_int("d", d);
      rec.set_int("m", m);
      rec.set_int("n", n);
      rec.sections["lemmas"] = run_lemmas(grid, g, &store, out);
      const bool pass = finish(store, rec, g, args);
      store.write_text("report.md", io::render_report(store.root()).markdown);
      return pass ? kExitOk : kExitCheckFailed;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace hks::cli
