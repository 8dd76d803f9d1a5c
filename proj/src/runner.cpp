#include "thermogas/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "thermogas/acceptance.hpp"
#include "thermogas/diagnostics.hpp"
#include "thermogas/fixed_point.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/reports.hpp"
#include "thermogas/snapshot.hpp"
#include "thermogas/spectral.hpp"

namespace thermogas {

namespace {

using nlohmann::json;

// One JSON object of the config. Every accessor marks its key as known;
// finish() rejects whatever is left.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }

  bool has(const std::string& name) {
    seen_.insert(name);
    return j_.contains(name);
  }

  const json& get(const std::string& name) {
    if (!has(name)) throw ConfigError(key(name), "is required");
    return j_.at(name);
  }

  double number(const std::string& name) {
    const json& v = get(name);
    if (!v.is_number()) throw ConfigError(key(name), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key(name), "must be finite");
    return x;
  }

  double number(const std::string& name, double fallback) { return has(name) ? number(name) : fallback; }

  double positive(const std::string& name) {
    const double x = number(name);
    if (!(x > 0.0)) throw ConfigError(key(name), "must be positive and finite");
    return x;
  }

  double positive(const std::string& name, double fallback) { return has(name) ? positive(name) : fallback; }

  // A number >= 1 or the string "inf".
  double exponent(const std::string& name, double fallback) {
    if (!has(name)) return fallback;
    const json& v = j_.at(name);
    if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
    if (!v.is_number() || !(v.get<double>() >= 1.0)) throw ConfigError(key(name), "must be a number >= 1 or \"inf\"");
    return v.get<double>();
  }

  long long integer(const std::string& name) {
    const json& v = get(name);
    if (!v.is_number_integer()) throw ConfigError(key(name), "must be an integer");
    return v.get<long long>();
  }

  long long integer(const std::string& name, long long fallback) { return has(name) ? integer(name) : fallback; }

  std::uint64_t unsigned_integer(const std::string& name) {
    const json& v = get(name);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    throw ConfigError(key(name), "must be a non-negative integer");
  }

  bool boolean(const std::string& name, bool fallback) {
    if (!has(name)) return fallback;
    const json& v = j_.at(name);
    if (!v.is_boolean()) throw ConfigError(key(name), "must be true or false");
    return v.get<bool>();
  }

  std::string choice(const std::string& name, std::initializer_list<const char*> options,
                     std::optional<std::string> fallback = std::nullopt) {
    if (!has(name)) {
      if (fallback) return *fallback;
      throw ConfigError(key(name), "is required");
    }
    const json& v = j_.at(name);
    std::string allowed;
    for (const char* o : options) {
      if (v.is_string() && v.get<std::string>() == o) return o;
      allowed += std::string(allowed.empty() ? "" : ", ") + "\"" + o + "\"";
    }
    throw ConfigError(key(name), "must be one of " + allowed);
  }

  Section child(const std::string& name) { return Section(get(name), key(name)); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(key(item.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

int checked_int(Section& s, const std::string& name, long long lo, long long hi, std::optional<long long> fallback = {}) {
  const long long v = fallback && !s.has(name) ? *fallback : s.integer(name);
  if (v < lo || v > hi) {
    throw ConfigError(s.key(name), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

Grid parse_grid(Section s) {
  const int d = checked_int(s, "d", 1, 3);
  const int n = checked_int(s, "n", 8, 4096);
  if ((n & (n - 1)) != 0) throw ConfigError(s.key("n"), "must be a power of two");
  const double L = s.positive("L");
  s.finish();
  return make_grid(d, n, L);
}

ModelParams parse_params(Section s) {
  ModelParams p;
  p.kappa1 = s.positive("kappa1");
  p.kappa2 = s.positive("kappa2");
  p.kappa3_bar = s.positive("kappa3_bar");
  const std::string profile = s.choice("kappa3_profile", {"zero", "tanh"});
  if (profile == "tanh") {
    p.kappa3_var.kind = ConductivityProfile::Kind::tanh;
    p.kappa3_var.alpha = s.number("alpha");
    if (p.kappa3_var.alpha < 0.0) throw ConfigError(s.key("alpha"), "must be >= 0");
    if (p.kappa3_var.alpha > p.kappa3_bar) {
      throw ConfigError(s.key("alpha"), "must not exceed kappa3_bar, or kappa3 turns negative");
    }
  } else if (s.has("alpha")) {
    throw ConfigError(s.key("alpha"), "only allowed with kappa3_profile \"tanh\"");
  }
  p.eps_a = s.positive("eps_a", 0.1);
  if (p.eps_a >= 1.0) throw ConfigError(s.key("eps_a"), "must be below 1");
  s.finish();
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("params", e.what());
  }
  return p;
}

InitialConfig parse_initial(Section s, const Grid& grid, const std::filesystem::path& base_dir) {
  InitialConfig c;
  const std::string preset = s.choice("preset", {"zero", "single-mode", "random-band", "file"});
  const int cap = grid.n() / 3;
  if (preset == "zero") {
    c.preset = InitialConfig::Preset::zero;
  } else if (preset == "single-mode") {
    c.preset = InitialConfig::Preset::single_mode;
    const json& m = s.get("mode");
    if (!m.is_array() || static_cast<int>(m.size()) != grid.dim()) {
      throw ConfigError(s.key("mode"), "must be an array of " + std::to_string(grid.dim()) + " integers");
    }
    for (int a = 0; a < grid.dim(); ++a) {
      if (!m[a].is_number_integer()) throw ConfigError(s.key("mode"), "entries must be integers");
      c.mode[a] = m[a].get<int>();
      if (std::abs(c.mode[a]) > cap) {
        throw ConfigError(s.key("mode"), "entries must satisfy |m| <= n/3 = " + std::to_string(cap));
      }
    }
    c.amplitude = s.number("amplitude");
    c.component = s.choice("component", {"a", "theta", "both"});
    c.sine = s.choice("shape", {"cos", "sin"}, "cos") == "sin";
  } else if (preset == "random-band") {
    c.preset = InitialConfig::Preset::random_band;
    if (s.has("seed")) c.seed = s.unsigned_integer("seed");
    c.band = checked_int(s, "band", 1, std::max(1, cap));
    if (3 * c.band > grid.n()) throw ConfigError(s.key("band"), "must satisfy 3 * band <= n");
    c.amplitude = s.number("amplitude");
    if (c.amplitude < 0.0) throw ConfigError(s.key("amplitude"), "must be >= 0");
    const std::string norm = s.choice("normalize", {"none", "linf", "h2", "besov"}, "linf");
    c.normalize = norm == "none"   ? Normalization::none
                  : norm == "linf" ? Normalization::linf
                  : norm == "h2"   ? Normalization::h2
                                   : Normalization::besov;
    c.variables = s.choice("variables", {"a_form", "tilde"}, "a_form") == "tilde" ? DataVariables::tilde
                                                                                  : DataVariables::a_form;
  } else {
    c.preset = InitialConfig::Preset::file;
    auto path = [&](const char* name) {
      const json& v = s.get(name);
      if (!v.is_string()) throw ConfigError(s.key(name), "must be a path string");
      std::filesystem::path p = v.get<std::string>();
      return p.is_relative() ? base_dir / p : p;
    };
    c.a_path = path("a_path");
    c.theta_path = path("theta_path");
  }
  s.finish();
  return c;
}

TimeConfig parse_time(Section s, const Grid& grid, const ModelParams& params) {
  TimeConfig t;
  t.T = s.positive("T");
  if (s.has("dt")) {
    t.dt = s.positive("dt");
    const double steps = std::round(t.T / t.dt);
    if (steps < 1.0 || std::abs(steps * t.dt - t.T) > 1e-9 * t.T) {
      throw ConfigError(s.key("dt"), "T must be an integer multiple of dt");
    }
  } else {
    t.dt = t.T / std::ceil(t.T / default_dt(grid, params));
  }
  t.scheme = s.choice("scheme", {"etd1", "etdrk2"}, "etdrk2") == "etd1" ? Scheme::etd1 : Scheme::etdrk2;
  t.snapshot_stride = checked_int(s, "snapshot_stride", 1, 1 << 30, 1);
  if (t.steps() % t.snapshot_stride != 0) {
    throw ConfigError(s.key("snapshot_stride"),
                      "must divide the step count " + std::to_string(t.steps()));
  }
  const std::string f = s.choice("formulation", {"a_form", "tilde", "primitive"}, "tilde");
  t.formulation = f == "a_form" ? Formulation::a_form : f == "tilde" ? Formulation::tilde : Formulation::primitive;
  t.write_snapshots = s.boolean("write_snapshots", true);
  s.finish();
  return t;
}

}  // namespace

int TimeConfig::steps() const { return static_cast<int>(std::lround(T / dt)); }

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  Section top(root, "");
  RunConfig c;
  c.grid = parse_grid(top.child("grid"));
  c.params = parse_params(top.child("params"));
  if (top.has("initial")) c.initial = parse_initial(top.child("initial"), c.grid, base_dir);
  if (top.has("time")) c.time = parse_time(top.child("time"), c.grid, c.params);
  if (top.has("fixedpoint")) {
    Section s = top.child("fixedpoint");
    c.fixedpoint.tol = s.positive("tol", c.fixedpoint.tol);
    c.fixedpoint.max_iter = checked_int(s, "max_iter", 1, 10000, c.fixedpoint.max_iter);
    c.fixedpoint.c = s.positive("c", c.fixedpoint.c);
    c.fixedpoint.M = s.positive("M", c.fixedpoint.M);
    s.finish();
  }
  if (top.has("scaling")) {
    Section s = top.child("scaling");
    c.lambda = checked_int(s, "lambda", 2, 64, 2);
    s.finish();
  }
  if (c.initial) {
    int reach = 0;
    if (c.initial->preset == InitialConfig::Preset::random_band) reach = c.initial->band;
    if (c.initial->preset == InitialConfig::Preset::single_mode) {
      for (int a = 0; a < c.grid.dim(); ++a) reach = std::max(reach, std::abs(c.initial->mode[a]));
    }
    if (reach * c.lambda > c.grid.n() / 3 && top.has("scaling")) {
      throw ConfigError("scaling.lambda", "lambda times the data band must stay within n/3");
    }
  }
  if (top.has("besov")) {
    Section s = top.child("besov");
    c.besov.spec.s = s.number("s", 1.5);
    c.besov.spec.p = s.exponent("p", 2.0);
    c.besov.spec.r = s.exponent("r", 1.0);
    c.besov.field = s.choice("field", {"a", "theta", "both"}, "both");
    s.finish();
  }
  if (top.has("verify")) {
    Section s = top.child("verify");
    if (s.has("seed")) c.verify_seed = s.unsigned_integer("seed");
    s.finish();
  }
  top.finish();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

AState build_initial(const RunConfig& config, std::optional<std::uint64_t> seed) {
  if (!config.initial) throw ConfigError("initial", "is required for this subcommand");
  const InitialConfig& c = *config.initial;
  const Grid& grid = config.grid;
  AState s{RealField(grid), RealField(grid)};
  try {
    switch (c.preset) {
      case InitialConfig::Preset::zero:
        break;
      case InitialConfig::Preset::single_mode: {
        const RealField f = single_mode_field(grid, c.mode, c.amplitude, c.sine);
        if (c.component != "theta") s.a = f;
        if (c.component != "a") s.theta = f;
        break;
      }
      case InitialConfig::Preset::random_band: {
        const auto chosen = seed ? seed : c.seed;
        if (!chosen) throw ConfigError("initial.seed", "is required unless --seed is given");
        s = random_band_state(grid, *chosen, c.band, c.amplitude, c.normalize, c.variables, config.params);
        break;
      }
      case InitialConfig::Preset::file: {
        auto load = [&](const std::filesystem::path& p, const char* key) {
          Snapshot snap;
          try {
            snap = load_snapshot(p);
          } catch (const std::exception& e) {
            throw ConfigError(std::string("initial.") + key, e.what());
          }
          if (!(snap.field.grid() == grid)) throw ConfigError(std::string("initial.") + key, "grid differs from grid section");
          return snap.field;
        };
        s.a = load(c.a_path, "a_path");
        s.theta = load(c.theta_path, "theta_path");
        break;
      }
    }
    check_floor(s.a, config.params.eps_a);
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
      if (!(1.0 + s.theta[i] > 0.0)) throw InvariantViolation("temperature must be positive", i, 1.0 + s.theta[i]);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("initial", e.what());
  }
  return s;
}

Command parse_command(const std::string& name) {
  if (name == "simulate") return Command::simulate;
  if (name == "fixedpoint") return Command::fixedpoint;
  if (name == "besov") return Command::besov;
  if (name == "scaling") return Command::scaling;
  if (name == "verify") return Command::verify;
  throw std::invalid_argument("unknown subcommand " + name);
}

int threads_from_env() {
  const char* v = std::getenv("THERMOGAS_THREADS");
  if (v == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min(n, 256L));
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

const TimeConfig& need_time(const RunConfig& c) {
  if (!c.time) throw ConfigError("time", "is required for this subcommand");
  return *c.time;
}

int do_simulate(const RunConfig& c, const RunRequest& req, std::ostream& out, std::ostream& err) {
  const TimeConfig& t = need_time(c);
  const AState initial = build_initial(c, req.seed);
  SimulateOptions opt;
  opt.T = t.T;
  opt.dt = t.dt;
  opt.scheme = t.scheme;
  opt.snapshot_stride = t.snapshot_stride;
  opt.step.formulation = t.formulation;
  const Trajectory traj = simulate(initial, c.params, opt);

  write_file(req.out_dir / "trajectory.csv", render([&](std::ostream& s) { write_trajectory_csv(s, traj); }));
  std::ostringstream summary;
  summary << "steps=" << t.steps() << "\ndt=" << format_number(t.dt) << "\nsnapshots=" << traj.times.size()
          << "\nbreached=" << (traj.breached ? "true" : "false") << '\n';
  if (traj.breached) summary << "breach=" << traj.breach_message << '\n';
  if (traj.times.size() >= 3) {
    write_file(req.out_dir / "energy_report.csv",
               render([&](std::ostream& s) { write_energy_csv(s, energy_report(traj, c.params)); }));
  } else {
    summary << "energy_report=skipped (needs 3 snapshots)\n";
  }
  summary << "min_entropy_production=" << format_number(min_entropy_production(traj, c.params)) << '\n';
  double drift = 0.0;
  for (const auto& r : traj.norms) drift = std::max(drift, std::abs(r.mass - traj.norms[0].mass) / traj.norms[0].mass);
  summary << "max_relative_mass_drift=" << format_number(drift) << '\n';
  write_file(req.out_dir / "summary.txt", summary.str());

  if (t.write_snapshots) {
    const auto dir = req.out_dir / "snapshots";
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "%06zu.thg", i);
      save_snapshot(traj.states[i].a, traj.times[i], dir / (std::string("a_") + name));
      save_snapshot(traj.states[i].theta, traj.times[i], dir / (std::string("theta_") + name));
    }
  }
  out << "simulate: " << traj.times.size() << " snapshots up to t=" << format_number(traj.times.back()) << '\n';
  if (traj.breached) {
    err << "invariant breach: " << traj.breach_message << '\n';
    return kExitBreach;
  }
  return kExitOk;
}

int do_fixedpoint(const RunConfig& c, const RunRequest& req, std::ostream& out, std::ostream& err) {
  const TimeConfig& t = need_time(c);
  const AState initial = build_initial(c, req.seed);
  PicardOptions opt;
  opt.T = t.T;
  opt.dt = t.dt;
  opt.tol = c.fixedpoint.tol;
  opt.max_iter = c.fixedpoint.max_iter;
  opt.c_radius = c.fixedpoint.c;
  opt.M_const = c.fixedpoint.M;
  const auto result = picard_iterate(initial.a, initial.theta, c.params, opt);
  const auto& rep = result.report;
  write_file(req.out_dir / "fixedpoint.csv", render([&](std::ostream& s) { write_fixedpoint_csv(s, rep); }));
  write_file(req.out_dir / "fixedpoint_summary.txt",
             render([&](std::ostream& s) { write_fixedpoint_summary(s, rep); }));
  out << "fixedpoint: " << to_string(rep.status) << " after " << rep.differences.size() << " maps\n";
  if (rep.status == PicardStatus::diverged) {
    err << "fixed-point iteration diverged" << (rep.message.empty() ? "" : ": " + rep.message) << '\n';
    return kExitBreach;
  }
  return kExitOk;
}

int do_besov(const RunConfig& c, const RunRequest& req, std::ostream& out) {
  const AState initial = build_initial(c, req.seed);
  const DyadicFamily family(c.grid);
  auto emit = [&](const RealField& f, const char* name) {
    const auto blocks = besov_blocks(family, f, c.besov.spec);
    write_file(req.out_dir / name, render([&](std::ostream& s) { write_besov_csv(s, blocks); }));
    out << name << ": norm " << format_number(blocks.empty() ? 0.0 : blocks.back().cumulative) << '\n';
  };
  if (c.besov.field != "theta") emit(initial.a, "besov_a.csv");
  if (c.besov.field != "a") emit(initial.theta, "besov_theta.csv");
  return kExitOk;
}

int do_scaling(const RunConfig& c, const RunRequest& req, std::ostream& out) {
  const TimeConfig& t = need_time(c);
  const AState initial = build_initial(c, req.seed);
  ScalingResult res;
  try {
    res = scaling_test(initial, c.params, c.lambda, t.T, t.dt, t.scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scaling.lambda", e.what());
  }
  // The critical index is d/2; a constant field has no ratio.
  auto varies = [](const RealField& f) {
    return std::any_of(f.values().begin(), f.values().end(), [&](double v) { return v != f[0]; });
  };
  const RealField& probe = varies(initial.a) ? initial.a : initial.theta;
  const double ratio = varies(probe) ? critical_norm_ratio(probe, c.lambda, 0.5 * c.grid.dim()) : std::nan("");
  write_file(req.out_dir / "scaling.csv", render([&](std::ostream& s) {
               write_scaling_csv(s, {c.lambda, t.T, t.dt, res, ratio});
             }));
  out << "scaling: discrepancy " << format_number(res.discrepancy) << '\n';
  return kExitOk;
}

int do_verify(const RunConfig& c, const RunRequest& req, std::ostream& out) {
  AcceptanceOptions opt;
  opt.params = c.params;
  if (c.verify_seed) opt.seed = *c.verify_seed;
  if (req.seed) opt.seed = *req.seed;
  opt.threads = req.threads;
  const auto results = run_acceptance(opt);
  bool all = true;
  for (const auto& r : results) {
    out << format_result(r) << '\n';
    all = all && r.pass;
  }
  write_file(req.out_dir / "verify.csv", render([&](std::ostream& s) { write_verify_csv(s, results); }));
  const auto dir = req.out_dir / "determinism";
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : determinism_bundle(opt)) write_file(dir / name, text);
  out << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const RunRequest& req, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = load_config(req.config);
    std::error_code ec;
    std::filesystem::create_directories(req.out_dir, ec);
    if (ec) throw ConfigError("--out", "cannot create " + req.out_dir.string() + ": " + ec.message());
    switch (req.command) {
      case Command::simulate:
        return do_simulate(config, req, out, err);
      case Command::fixedpoint:
        return do_fixedpoint(config, req, out, err);
      case Command::besov:
        return do_besov(config, req, out);
      case Command::scaling:
        return do_scaling(config, req, out);
      case Command::verify:
        return do_verify(config, req, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantViolation& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kExitBreach;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBreach;
  }
  return kExitBreach;
}

}  // namespace thermogas
