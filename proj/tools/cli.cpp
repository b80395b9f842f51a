// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fks/csv.hpp"
#include "fks/diagnostics.hpp"
#include "fks/error.hpp"
#include "fks/frac_laplacian.hpp"
#include "fks/meanfield.hpp"
#include "fks/parallel.hpp"
#include "fks/particles.hpp"
#include "fks/stable_noise.hpp"
#include "fks/stats.hpp"
#include "fks/thresholds.hpp"
#include "json.hpp"

#ifndef FKS_GIT_DESCRIBE
#define FKS_GIT_DESCRIBE "unknown"
#endif

namespace fks::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Strict view of one JSON object: every key read is echoed into resolved(),
// and finish() rejects whatever was never read.
class Section {
 public:
  Section(const json& src, std::string path) : src_(src), path_(std::move(path)) {
    if (!src_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  }

  double number(const std::string& key, double def) {
    double v = def;
    if (const json* j = find(key)) {
      if (!j->is_number()) bad(key, "a number");
      v = j->get<double>();
      if (!std::isfinite(v)) bad(key, "a finite number");
    }
    resolved_[key] = v;
    return v;
  }

  std::uint64_t count(const std::string& key, std::uint64_t def) {
    std::uint64_t v = def;
    if (const json* j = find(key)) v = as_count(*j, key);
    resolved_[key] = v;
    return v;
  }

  bool flag(const std::string& key, bool def) {
    bool v = def;
    if (const json* j = find(key)) {
      if (!j->is_boolean()) bad(key, "true or false");
      v = j->get<bool>();
    }
    resolved_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& def) {
    std::string v = def;
    if (const json* j = find(key)) {
      if (!j->is_string()) bad(key, "a string");
      v = j->get<std::string>();
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& def) {
    std::vector<double> v = def;
    if (const json* j = find(key)) {
      if (!j->is_array() || j->empty()) bad(key, "a non-empty array of numbers");
      v.clear();
      for (const auto& e : *j) {
        if (!e.is_number()) bad(key, "a non-empty array of numbers");
        v.push_back(e.get<double>());
      }
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<std::uint64_t> counts(const std::string& key, const std::vector<std::uint64_t>& def) {
    std::vector<std::uint64_t> v = def;
    if (const json* j = find(key)) {
      if (!j->is_array() || j->empty()) bad(key, "a non-empty array of integers");
      v.clear();
      for (const auto& e : *j) v.push_back(as_count(e, key));
    }
    resolved_[key] = v;
    return v;
  }

  // Array of fixed-length numeric tuples, e.g. [[1.5, 0.5], [1.8, 1.2]].
  std::vector<std::vector<double>> tuples(const std::string& key, std::size_t len,
                                          const std::vector<std::vector<double>>& def) {
    auto v = def;
    if (const json* j = find(key)) {
      const std::string want = "an array of " + std::to_string(len) + "-element number arrays";
      if (!j->is_array() || j->empty()) bad(key, want);
      v.clear();
      for (const auto& row : *j) {
        if (!row.is_array() || row.size() != len) bad(key, want);
        std::vector<double> t;
        for (const auto& e : row) {
          if (!e.is_number()) bad(key, want);
          t.push_back(e.get<double>());
        }
        v.push_back(std::move(t));
      }
    }
    resolved_[key] = v;
    return v;
  }

  Section child(const std::string& key) {
    used_.insert(key);
    const auto it = src_.find(key);
    if (it == src_.end()) return Section(empty_, path_ + "." + key);
    return Section(*it, path_ + "." + key);
  }

  void adopt(const std::string& key, const Section& s) { resolved_[key] = s.resolved(); }

  // Overrides a value after the fact (command-line flags win over the file).
  void set(const std::string& key, json v) { resolved_[key] = std::move(v); }

  void finish() const {
    for (const auto& [k, v] : src_.items())
      if (!used_.count(k)) throw ConfigError(path_ + ": unknown key '" + k + "'");
  }

  const json& resolved() const { return resolved_; }

 private:
  const json* find(const std::string& key) {
    used_.insert(key);
    const auto it = src_.find(key);
    return it == src_.end() ? nullptr : &*it;
  }

  std::uint64_t as_count(const json& j, const std::string& key) const {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
      bad(key, "a non-negative integer");
    return j.get<std::uint64_t>();
  }

  [[noreturn]] void bad(const std::string& key, const std::string& what) const {
    throw ConfigError(path_ + "." + key + ": expected " + what);
  }

  static inline const json empty_ = json::object();
  const json& src_;
  std::string path_;
  std::set<std::string> used_;
  json resolved_ = json::object();
};

struct Context {
  Context(std::string cmd, std::string cfg, fs::path dir, std::ostream& o, std::ostream& e)
      : command(std::move(cmd)), config_path(std::move(cfg)), out_dir(std::move(dir)), out(o), err(e) {}

  std::string command;
  std::string config_path;
  fs::path out_dir;
  std::optional<std::uint64_t> seed_flag;
  json source = json::object();
  std::ostream& out;
  std::ostream& err;
  json config = json::object();
  json result = json::object();
  json warnings = json::array();
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;

  std::ofstream open(const std::string& name, bool binary = false) {
    fs::create_directories(out_dir);
    outputs.push_back(name);
    std::ofstream f(out_dir / name, binary ? std::ios::binary : std::ios::out);
    if (!f) throw Error("cannot open " + (out_dir / name).string() + " for writing");
    return f;
  }

  void write_manifest() {
    json m = json::object();
    m["command"] = command;
    m["config_path"] = config_path;
    m["output_dir"] = out_dir.string();
    m["seed"] = seed;
    m["git_describe"] = FKS_GIT_DESCRIBE;
    m["config"] = config;
    m["outputs"] = outputs;
    m["warnings"] = warnings;
    m["result"] = result;
    fs::create_directories(out_dir);
    std::ofstream f(out_dir / "manifest.json");
    f << m.dump(2) << '\n';
    if (!f) throw Error("cannot write manifest");
  }

  void warn(const std::string& w) {
    warnings.push_back(w);
    err << "warning: " << w << '\n';
  }
};

std::string num(double v) { return format_double(v); }

std::uint64_t resolve_seed(Context& ctx, Section& s, std::uint64_t def) {
  std::uint64_t seed = s.count("seed", def);
  if (ctx.seed_flag) {
    seed = *ctx.seed_flag;
    s.set("seed", seed);
  }
  ctx.seed = seed;
  return seed;
}

InitialDensity read_initial(Section& s, const InitialDensity& def) {
  InitialDensity d = def;
  const std::string kind = s.text("kind", def.kind == InitialKind::kGaussian      ? "gaussian"
                                          : def.kind == InitialKind::kUniformDisk ? "uniform_disk"
                                                                                  : "two_bumps");
  if (kind == "gaussian")
    d.kind = InitialKind::kGaussian;
  else if (kind == "uniform_disk")
    d.kind = InitialKind::kUniformDisk;
  else if (kind == "two_bumps")
    d.kind = InitialKind::kTwoBumps;
  else
    throw ConfigError("initial.kind: expected gaussian, uniform_disk or two_bumps");
  d.sigma = s.number("sigma", def.sigma);
  d.radius = s.number("radius", def.radius);
  const auto c = s.tuples("centers", 2, {{def.centers[0].x, def.centers[0].y}, {def.centers[1].x, def.centers[1].y}});
  if (c.size() != 2) throw ConfigError("initial.centers: expected exactly two points");
  d.centers = {Vec2{c[0][0], c[0][1]}, Vec2{c[1][0], c[1][1]}};
  d.kappa_moment = s.number("kappa_moment", def.kappa_moment);
  return d;
}

// Particle/PDE model parameters shared by simulate, pde and chaos-study.
SimConfig read_model(Context& ctx, Section& s, const SimConfig& def, bool with_n) {
  SimConfig c = def;
  c.a = s.number("a", def.a);
  c.kernel.alpha = s.number("alpha", def.kernel.alpha);
  c.kernel.chi = s.number("chi", def.kernel.chi);
  c.kernel.eta = s.number("eta", def.kernel.eta);
  if (with_n) c.n = s.count("n", def.n);
  c.dt = s.number("dt", def.dt);
  c.t_end = s.number("t_end", def.t_end);
  c.record_every = static_cast<int>(s.count("record_every", static_cast<std::uint64_t>(def.record_every)));
  c.seed = resolve_seed(ctx, s, def.seed);
  Section init = s.child("initial");
  c.initial = read_initial(init, def.initial);
  init.finish();
  s.adopt("initial", init);
  for (const auto& w : c.validate()) ctx.warn(w);
  return c;
}

// ---- commands ----

int cmd_noise_selftest(Context& ctx) {
  Section s(ctx.source, "config");
  SelfTestConfig c;
  c.a = s.number("a", c.a);
  c.t = s.number("t", c.t);
  c.samples = s.count("samples", c.samples);
  c.level = s.number("level", c.level);
  c.seed = resolve_seed(ctx, s, c.seed);
  s.finish();
  ctx.config = s.resolved();
  StableParams{c.a, c.t}.validate();
  if (c.samples < 100) throw ConfigError("config.samples: need at least 100 samples");
  if (!(c.level > 0.0 && c.level < 1.0)) throw ConfigError("config.level: expected a value in (0, 1)");

  const auto results = run_noise_selftest(c);
  auto f = ctx.open("selftest.csv");
  write_csv_row(f, {"test", "statistic", "threshold", "pass"});
  bool all = true;
  json failed = json::array();
  for (const auto& r : results) {
    write_csv_row(f, {r.name, num(r.statistic), num(r.threshold), r.pass ? "true" : "false"});
    if (!r.pass) {
      all = false;
      failed.push_back(r.name);
      ctx.err << "FAIL " << r.name << ": statistic " << r.statistic << " exceeds " << r.threshold << '\n';
    }
  }
  ctx.result["tests"] = results.size();
  ctx.result["failed"] = failed;
  ctx.result["pass"] = all;
  ctx.write_manifest();
  ctx.out << (all ? "noise-selftest: all " : "noise-selftest: failures among ") << results.size() << " tests\n";
  return all ? kOk : kContractViolation;
}

int cmd_simulate(Context& ctx) {
  Section s(ctx.source, "config");
  SimConfig def;
  def.n = 64;
  def.t_end = 0.1;
  def.record_every = 1;
  const SimConfig c = read_model(ctx, s, def, true);
  const bool allow_blowup = s.flag("allow_blowup", true);
  const bool trajectory = s.flag("write_trajectory", true);
  Section d = s.child("diagnostics");
  const double kappa = d.number("kappa", c.initial.kappa_moment);
  const double gamma = d.number("gamma", 1.0);
  const double m_cap = d.number("m_cap", 1e6);
  const double bandwidth = d.number("entropy_bandwidth", 0.0);
  d.finish();
  s.adopt("diagnostics", d);
  s.finish();
  ctx.config = s.resolved();
  if (!(kappa > 0.0)) throw ConfigError("config.diagnostics.kappa: expected a positive number");
  if (!(gamma > 0.0 && m_cap > 0.0)) throw ConfigError("config.diagnostics: gamma and m_cap must be positive");
  if (bandwidth < 0.0) throw ConfigError("config.diagnostics.entropy_bandwidth: must be >= 0 (0 disables)");

  std::ostringstream traj;
  if (trajectory) write_csv_row(traj, {"t", "particle_id", "x", "y"});
  std::vector<DiagnosticHook> hooks;
  hooks.push_back([&](const ParticleEnsemble& e, DiagnosticsSeries& out) {
    const auto m = moment_estimate(e.positions, kappa);
    out.add(e.time, "moment", m.value, m.mc_error);
    const auto p = pair_moment_estimate(e.positions, gamma, m_cap);
    out.add(e.time, "pair_moment", p.value, p.mc_error);
    if (bandwidth > 0.0) out.add(e.time, "entropy", entropy_kde(e.positions, bandwidth));
    if (trajectory) {
      const std::string t = num(e.time);
      for (std::size_t i = 0; i < e.size(); ++i)
        write_csv_row(traj, {t, std::to_string(i), num(e.positions[i].x), num(e.positions[i].y)});
    }
  });
  const auto series = run(c, hooks);
  if (trajectory) ctx.open("trajectory.csv") << traj.str();
  {
    auto f = ctx.open("diagnostics.csv");
    series.write_csv(f);
  }
  ctx.result["blown_up"] = series.blown_up;
  ctx.result["blow_up_time"] = series.blown_up ? json(series.blow_up_time) : json(nullptr);
  ctx.result["termination_reason"] = series.termination_reason;
  ctx.result["snapshots"] = series.snapshot_times.size();
  ctx.result["config_hash"] = series.run_manifest;
  ctx.write_manifest();
  if (series.blown_up) {
    ctx.err << "simulate: " << series.termination_reason << '\n';
    if (!allow_blowup) return kBlowUp;
  }
  ctx.out << "simulate: " << series.snapshot_times.size() << " snapshots written to " << ctx.out_dir.string() << '\n';
  return kOk;
}

void dump_grid(Context& ctx, const GridDensity& g, std::size_t k, int bins) {
  char stem[32];
  std::snprintf(stem, sizeof stem, "density_%04zu", k);
  {
    auto f = ctx.open(std::string(stem) + ".bin", true);
    f.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(double)));
  }
  json side = json::object();
  side["M"] = g.m;
  side["L"] = g.box_length;
  side["t"] = g.time;
  side["dtype"] = "float64";
  side["byte_order"] = std::endian::native == std::endian::little ? "little" : "big";
  side["layout"] = "row-major, row index = y";
  ctx.open(std::string(stem) + ".json") << side.dump(2) << '\n';
  char rad[32];
  std::snprintf(rad, sizeof rad, "radial_%04zu.csv", k);
  auto f = ctx.open(rad);
  write_csv_row(f, {"r", "density"});
  for (const auto& b : radial_profile(g, bins)) write_csv_row(f, {num(b.radius), num(b.mean)});
}

int cmd_pde(Context& ctx) {
  Section s(ctx.source, "config");
  SimConfig def;
  def.t_end = 0.25;
  def.record_every = 5;
  const SimConfig c = read_model(ctx, s, def, false);
  const auto m = s.count("m", 256);
  const double box = s.number("box_length", 20.0);
  const auto bins = s.count("radial_bins", 64);
  s.finish();
  ctx.config = s.resolved();
  if (m < 8 || m > 4096 || (m & (m - 1)) != 0) throw ConfigError("config.m: expected a power of two in [8, 4096]");
  if (!(box > 0.0)) throw ConfigError("config.box_length: must be positive");
  if (bins < 1) throw ConfigError("config.radial_bins: must be positive");

  const auto r = run_pde(c, static_cast<int>(m), box);
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) dump_grid(ctx, r.snapshots[k], k, static_cast<int>(bins));
  ctx.result["snapshots"] = r.snapshots.size();
  ctx.result["substeps"] = r.substeps;
  ctx.result["max_relative_mass_change"] = r.max_relative_mass_change;
  ctx.result["initial_outside_mass"] = r.initial_outside_mass;
  ctx.result["boundary_contamination"] = r.boundary_contamination;
  ctx.result["contamination_time"] = r.boundary_contamination ? json(r.contamination_time) : json(nullptr);
  ctx.result["unreliable"] = r.unreliable;
  ctx.result["unreliable_after"] = r.unreliable ? json(r.unreliable_after) : json(nullptr);
  if (r.boundary_contamination) ctx.warn("boundary contamination flagged at t=" + num(r.contamination_time));
  if (r.unreliable) ctx.warn("negative density beyond tolerance after t=" + num(r.unreliable_after));
  ctx.write_manifest();
  ctx.out << "pde: " << r.snapshots.size() << " snapshots written to " << ctx.out_dir.string() << '\n';
  return kOk;
}

int cmd_chaos_study(Context& ctx) {
  Section s(ctx.source, "config");
  SimConfig def;
  def.t_end = 0.25;
  def.record_every = 25;
  SimConfig c = read_model(ctx, s, def, false);
  const auto ns = s.counts("n_values", {64, 256, 1024});
  const auto seeds = s.count("seeds", 20);
  const auto m = s.count("m", 256);
  const double box = s.number("box_length", 20.0);
  const bool allow_blowup = s.flag("allow_blowup", true);
  const bool require_decreasing = s.flag("require_decreasing", true);
  s.finish();
  ctx.config = s.resolved();
  if (seeds < 1) throw ConfigError("config.seeds: must be positive");
  if (m < 8 || m > 4096 || (m & (m - 1)) != 0) throw ConfigError("config.m: expected a power of two in [8, 4096]");
  for (auto n : ns)
    if (n < 2) throw ConfigError("config.n_values: every N must be at least 2");

  const auto pde = run_pde(c, static_cast<int>(m), box);
  const GridDensity& ref = pde.snapshots.back();
  if (pde.boundary_contamination) ctx.warn("reference PDE flagged boundary contamination");

  auto rows = ctx.open("chaos.csv");
  write_csv_row(rows, {"n", "seed", "w1_one_marginal", "w2_product_gap", "blown_up"});
  std::vector<double> medians;
  json per_n = json::array();
  bool any_blowup = false;
  for (auto n : ns) {
    std::vector<double> w1, w2;
    for (std::uint64_t k = 0; k < seeds; ++k) {
      c.n = n;
      c.seed = ctx.seed + k;
      ParticleEnsemble e = init(c);
      bool blown = false;
      try {
        for (std::size_t st = 1; st <= c.steps(); ++st) step_in_place(e, c, st);
      } catch (const BlowUpError&) {
        blown = true;
      } catch (const CollisionError&) {
        blown = true;
      }
      if (blown) {
        any_blowup = true;
        write_csv_row(rows, {std::to_string(n), std::to_string(c.seed), "nan", "nan", "true"});
        continue;
      }
      const auto g = chaos_gap(e, ref, c.seed);
      w1.push_back(g.w1_one_marginal);
      w2.push_back(g.w2_product_gap);
      write_csv_row(rows, {std::to_string(n), std::to_string(c.seed), num(g.w1_one_marginal), num(g.w2_product_gap),
                           "false"});
    }
    const double mw1 = w1.empty() ? NAN : stats::median(w1);
    const double mw2 = w2.empty() ? NAN : stats::median(w2);
    medians.push_back(mw1);
    per_n.push_back({{"n", n}, {"median_w1_one_marginal", mw1}, {"median_w2_product_gap", mw2}, {"runs", w1.size()}});
  }
  rows.close();
  {
    auto f = ctx.open("chaos_summary.csv");
    write_csv_row(f, {"n", "median_w1_one_marginal", "median_w2_product_gap", "runs"});
    for (const auto& r : per_n)
      write_csv_row(f, {std::to_string(r["n"].get<std::uint64_t>()), num(r["median_w1_one_marginal"].get<double>()),
                        num(r["median_w2_product_gap"].get<double>()), std::to_string(r["runs"].get<std::size_t>())});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < medians.size(); ++i) decreasing &= medians[i] < medians[i - 1];
  ctx.result["per_n"] = per_n;
  ctx.result["median_w1_decreasing"] = decreasing;
  ctx.result["any_blowup"] = any_blowup;
  ctx.write_manifest();
  ctx.out << "chaos-study: median W1 " << (decreasing ? "decreasing" : "NOT decreasing") << " over " << ns.size()
          << " ensemble sizes\n";
  if (any_blowup && !allow_blowup) return kBlowUp;
  if (require_decreasing && !decreasing) return kContractViolation;
  return kOk;
}

int cmd_thresholds(Context& ctx) {
  Section s(ctx.source, "config");
  const double lo = s.number("a_min", 1.02);
  const double hi = s.number("a_max", 1.98);
  const auto count = s.count("count", 50);
  const double tol = s.number("tol", 1e-10);
  s.finish();
  ctx.config = s.resolved();
  if (!(1.0 < lo && lo <= hi && hi < 2.0)) throw ConfigError("config: need 1 < a_min <= a_max < 2");
  if (count < 1 || (count == 1 && lo != hi)) throw ConfigError("config.count: must be positive");
  if (!(tol > 0.0)) throw ConfigError("config.tol: must be positive");

  std::vector<double> as;
  for (std::uint64_t i = 0; i < count; ++i)
    as.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  const auto t = build_threshold_table(as, tol);
  auto f = ctx.open("thresholds.csv");
  write_csv_row(f, {"a", "chi_rigorous", "chi_appendix_sup", "arg_eps"});
  for (std::size_t i = 0; i < t.a_values.size(); ++i)
    write_csv_row(f, {num(t.a_values[i]), num(t.chi_rigorous[i]), num(t.chi_appendix[i]), num(t.arg_eps[i])});
  f.close();
  json j = {{"a_star_rigorous", t.a_star_rigorous}, {"residual", std::abs(chi_rigorous(t.a_star_rigorous))}};
  ctx.open("thresholds.json") << j.dump(2) << '\n';
  ctx.result["a_star_rigorous"] = t.a_star_rigorous;
  ctx.result["rows"] = t.a_values.size();
  ctx.write_manifest();
  ctx.out << "thresholds: " << t.a_values.size() << " rows, a* = " << num(t.a_star_rigorous) << '\n';
  return kOk;
}

int cmd_fraclap_check(Context& ctx) {
  Section s(ctx.source, "config");
  const auto cases =
      s.tuples("cases", 2, {{1.2, 0.3}, {1.2, 0.9}, {1.5, 0.5}, {1.5, 1.2}, {1.8, 0.5}, {1.8, 1.5}});
  const auto radii = s.numbers("radii", {0.5, 1.0, 2.0});
  const double tolerance = s.number("tolerance", 1e-3);
  s.finish();
  ctx.config = s.resolved();
  for (const auto& c : cases)
    if (!(c[0] > 0.0 && c[0] < 2.0 && c[1] > 0.0 && c[1] < c[0]))
      throw ConfigError("config.cases: each [a, eps] needs 0 < eps < a < 2");
  for (double r : radii)
    if (!(r > 0.0)) throw ConfigError("config.radii: radii must be positive");

  auto f = ctx.open("fraclap.csv");
  write_csv_row(f, {"a", "eps", "abs_x", "quadrature", "closed_form", "rel_error"});
  double worst = 0.0;
  for (const auto& c : cases) {
    const double a = c[0], eps = c[1];
    auto fn = [eps](const Vec2& y) { return std::pow(norm2(y), 0.5 * eps); };
    auto grad = [eps](const Vec2& y) { return eps * std::pow(norm2(y), 0.5 * eps - 1.0) * y; };
    for (double r : radii) {
      const Vec2 x{0.6 * r, 0.8 * r};
      auto q = PvQuadratureParams::defaults_for(x);
      q.growth_exponent = eps;
      const double got = apply_pv(fn, grad, x, a, q);
      const double want = exact_power_law(a, eps, x);
      const double rel = std::abs(got - want) / std::abs(want);
      worst = std::max(worst, rel);
      write_csv_row(f, {num(a), num(eps), num(r), num(got), num(want), num(rel)});
    }
  }
  f.close();
  const bool pass = worst < tolerance;
  ctx.result["max_rel_error"] = worst;
  ctx.result["pass"] = pass;
  ctx.write_manifest();
  ctx.out << "fraclap-check: max rel_error " << num(worst) << (pass ? " (pass)\n" : " (FAIL)\n");
  return pass ? kOk : kContractViolation;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Keller-Segel particle and mean-field experiments", "fks"};
  std::string config_path, out_dir = "fks_output";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
  app.add_option("--out", out_dir, "Output directory; nothing is written elsewhere")->capture_default_str();
  app.add_option("--threads", threads, "Cap on worker threads (0 = hardware default)");
  app.require_subcommand(1);
  const std::map<std::string, std::pair<std::string, int (*)(Context&)>> commands{
      {"noise-selftest", {"KS and characteristic-function checks of the stable sampler", cmd_noise_selftest}},
      {"simulate", {"Run the interacting particle system", cmd_simulate}},
      {"pde", {"Run the spectral mean-field solver", cmd_pde}},
      {"chaos-study", {"Compare particle ensembles with the mean-field solution over N", cmd_chaos_study}},
      {"thresholds", {"Tabulate sensitivity thresholds over a", cmd_thresholds}},
      {"fraclap-check", {"Quadrature of the fractional Laplacian against the power-law closed form", cmd_fraclap_check}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  set_max_threads(threads);

  Context ctx(name, config_path, fs::path(out_dir), out, err);
  if (seed_opt->count() > 0) ctx.seed_flag = seed;
  try {
    ctx.source = load_config(config_path);
    return commands.at(name).second(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << '\n';
    return kBlowUp;
  } catch (const Error& e) {
    err << name << ": " << e.what() << '\n';
    return kContractViolation;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << '\n';
    return kContractViolation;
  }
}

}  // namespace fks::cli
