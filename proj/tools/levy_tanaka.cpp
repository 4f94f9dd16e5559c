// levy-tanaka: symbols, condition reports, h tables, path simulation and the
// Monte Carlo verification experiments, driven from the command line.
//
// Exit status: 0 pass, 1 statistical fail, 2 usage error, 3 condition
// violation, 4 numerical failure.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levy/conditions.hpp"
#include "levy/decomposition.hpp"
#include "levy/model_io.hpp"
#include "levy/pathsim.hpp"
#include "levy/resolvent.hpp"
#include "levy/symbol.hpp"

#ifndef LEVY_VERSION
#define LEVY_VERSION "dev"
#endif

namespace {

using nlohmann::json;

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kCondition = 3, kNumeric = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Files go to --out when given, otherwise the primary output goes to stdout.
class Sink {
 public:
  explicit Sink(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool to_files() const { return !dir_.empty(); }

  void emit(const std::string& name, const std::string& content, bool primary = true) {
    if (dir_.empty()) {
      if (primary) std::cout << content;
      return;
    }
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    inventory_.push_back(
        {{"file", name}, {"bytes", content.size()}, {"fnv1a64", hex64(levy::fnv1a64(content))}});
  }

  void manifest(const std::string& command, const levy::LevyModel& model, const json& config,
                const std::string& started) {
    if (dir_.empty()) return;
    json m;
    m["tool"] = "levy-tanaka";
    m["version"] = LEVY_VERSION;
    m["command"] = command;
    try {
      m["model"] = levy::model_to_json(model);
      m["model_hash"] = levy::model_hash(model);
    } catch (const levy::InvalidModel&) {
      m["model"] = model.label;
    }
    m["config"] = config;
    if (config.contains("seed")) m["seed"] = config["seed"];
    m["started_utc"] = started;
    m["finished_utc"] = utc_now();
    m["outputs"] = inventory_;
    const auto path = std::filesystem::path(dir_) / "manifest.json";
    std::ofstream(path) << m.dump(2) << '\n';
  }

 private:
  std::string dir_;
  json inventory_ = json::array();
};

struct ModelArgs {
  std::string file;
  std::string preset;

  void add(CLI::App* app) {
    auto* f = app->add_option("--model", file, "Model spec file (JSON)");
    auto* p = app->add_option("--preset", preset, "Built-in model preset");
    f->excludes(p);
    p->excludes(f);
  }

  levy::LevyModel load() const {
    if (!file.empty()) return levy::load_model(file);
    if (!preset.empty()) return levy::preset(preset);
    throw UsageError("one of --model or --preset is required");
  }
};

struct SimArgs {
  int paths = 1000;
  int steps = 1000;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  double cutoff = 1e-3;

  void add(CLI::App* app) {
    app->add_option("--paths", paths, "Number of paths")->capture_default_str();
    app->add_option("--steps", steps, "Time steps per path")->capture_default_str();
    app->add_option("--horizon", horizon, "Horizon T")->capture_default_str();
    app->add_option("--seed", seed, "Base seed")->capture_default_str();
    app->add_option("--jump-cutoff", cutoff, "Small-jump cutoff for the compound Poisson scheme")
        ->capture_default_str();
  }

  levy::SimConfig config(double x0) const {
    levy::SimConfig c;
    c.n_paths = paths;
    c.n_steps = steps;
    c.horizon = horizon;
    c.seed = seed;
    c.small_jump_cutoff = cutoff;
    c.x0 = x0;
    return c;
  }

  json echo() const {
    return {{"paths", paths}, {"steps", steps}, {"horizon", horizon}, {"seed", seed},
            {"jump_cutoff", cutoff}};
  }
};

int cmd_symbol(const ModelArgs& ma, const std::vector<double>& u, const std::string& out) {
  const auto started = utc_now();
  const auto model = ma.load();
  std::ostringstream csv;
  csv << "u,re,im,error_estimate\n";
  for (double v : u) {
    const auto s = levy::symbol_eval(model, v);
    csv << num(v) << ',' << num(s.re) << ',' << num(s.im) << ',' << num(s.error_estimate) << '\n';
  }
  Sink sink(out);
  sink.emit("symbol.csv", csv.str());
  sink.manifest("symbol", model, {{"u", u}, {"symbol_abs_tol", levy::kSymbolAbsTol}}, started);
  return kPass;
}

int cmd_check(const ModelArgs& ma, bool no_probes, const std::string& out) {
  const auto started = utc_now();
  const auto model = ma.load();
  levy::CheckOptions opts;
  opts.numeric_probes = !no_probes;
  const auto rep = levy::full_report(model, opts);
  Sink sink(out);
  sink.emit("check.json", rep.to_json().dump(2) + "\n");
  sink.manifest("check", model, {{"numeric_probes", opts.numeric_probes}, {"probe_budget", opts.probe_budget}},
                started);
  return kPass;
}

int cmd_h(const ModelArgs& ma, const std::vector<double>& xs, const std::vector<double>& qs, double tol,
          bool force, const std::string& out) {
  const auto started = utc_now();
  const auto model = ma.load();
  levy::require_conditions(model, true, force);
  levy::ResolventOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  opts.override_conditions = true;
  opts.force = force;
  std::ostringstream csv;
  csv << "x,h,error_estimate,converged\n";
  std::ostringstream qcsv;
  qcsv << "x,q,h_q,gap,error_estimate\n";
  for (double x : xs) {
    const auto h = levy::renormalized_zero_resolvent(model, x, opts);
    csv << num(x) << ',' << num(h.h) << ',' << num(h.error_estimate) << ',' << (h.converged ? 1 : 0)
        << '\n';
    if (!qs.empty()) {
      const auto scan = levy::h_q_convergence_scan(model, x, qs, opts);
      for (const auto& r : scan.rows) {
        qcsv << num(x) << ',' << num(r.q) << ',' << num(r.h_q) << ',' << num(r.gap) << ','
             << num(r.error_estimate) << '\n';
      }
    }
  }
  Sink sink(out);
  sink.emit("h.csv", csv.str());
  if (!qs.empty()) {
    if (sink.to_files()) {
      sink.emit("h_q.csv", qcsv.str());
    } else {
      std::cout << '\n' << qcsv.str();
    }
  }
  sink.manifest("h", model, {{"x", xs}, {"q", qs}, {"tol", tol}, {"force", force}}, started);
  return kPass;
}

int cmd_simulate(const ModelArgs& ma, const SimArgs& sa, double x0, const std::string& out) {
  const auto started = utc_now();
  const auto model = ma.load();
  const auto cfg = sa.config(x0);
  levy::PathSimulator sim(model, cfg);
  std::ostringstream csv;
  csv << "path_id,step,t,x\n";
  std::vector<double> s;
  const auto& t = sim.t_grid();
  for (int p = 0; p < cfg.n_paths; ++p) {
    sim.simulate(static_cast<std::uint64_t>(p), s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      csv << p << ',' << i << ',' << num(t[i]) << ',' << num(s[i]) << '\n';
    }
  }
  Sink sink(out);
  sink.emit("paths.csv", csv.str());
  auto echo = sa.echo();
  echo["x0"] = x0;
  echo["scheme"] = levy::to_string(sim.scheme());
  sink.manifest("simulate", model, echo, started);
  return kPass;
}

struct VerifyArgs {
  SimArgs sim;
  std::vector<double> q = {1.0};
  double x = 0.0;
  double y = 0.0;
  double x0 = 0.0;
  double eps = 0.0;
  double z = 4.0;
  double tol = 1e-8;
  int grid_nodes = 2048;
  double resolvent_margin = 0.03;
  double killed_tol = 0.10;
  double kill_radius = 0.1;
  int refinements = 3;
  unsigned threads = 0;
  bool force = false;

  void add(CLI::App* app, const std::string& kind) {
    sim.add(app);
    if (kind == "tanaka") {
      q = {1.0, 0.1, 0.01};
      app->add_option("--q", q, "Descending q values for the -M^q -> N trend")->delimiter(',');
    } else if (kind != "killed") {
      app->add_option("--q", q, "Discount rate q > 0")->expected(1);
    }
    if (kind != "killed") app->add_option("--x", x, "Level x")->capture_default_str();
    if (kind == "resolvent-id") app->add_option("--y", y, "Starting point y")->capture_default_str();
    if (kind == "doob-meyer" || kind == "tanaka" || kind == "killed") {
      app->add_option("--x0", x0, "Starting point")->capture_default_str();
    }
    if (kind == "killed") {
      x0 = 1.0;
      app->add_option("--kill-radius", kill_radius, "Kill radius delta_K")->capture_default_str();
      app->add_option("--refinements", refinements, "Number of halvings of the kill radius")
          ->capture_default_str();
      app->add_option("--killed-tol", killed_tol, "Relative tolerance against h(x0)")
          ->capture_default_str();
    } else {
      app->add_option("--eps", eps, "Occupation half-width (0: automatic)")->capture_default_str();
    }
    if (kind == "resolvent-id") {
      app->add_option("--margin", resolvent_margin, "Relative discretization margin")
          ->capture_default_str();
    }
    app->add_option("--z", z, "z-score threshold")->capture_default_str();
    app->add_option("--tol", tol, "Quadrature tolerance for the spatial grids")->capture_default_str();
    app->add_option("--grid-nodes", grid_nodes, "Spatial grid size")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0: automatic)")->capture_default_str();
    app->add_flag("--force", force, "Proceed when a condition check is inconclusive");
  }

  levy::ExperimentConfig config() const {
    levy::ExperimentConfig c;
    c.sim = sim.config(x0);
    c.eps = eps;
    c.z_threshold = z;
    c.grid_nodes = grid_nodes;
    c.grid_tol = tol;
    c.q_trend = q;
    c.resolvent_margin = resolvent_margin;
    c.killed_tolerance = killed_tol;
    c.kill_refinements = refinements;
    c.force = force;
    c.workers = threads;
    return c;
  }

  json echo(const std::string& kind) const {
    json j = sim.echo();
    j["experiment"] = kind;
    j["eps"] = eps;
    j["z"] = z;
    j["tol"] = tol;
    j["grid_nodes"] = grid_nodes;
    j["force"] = force;
    if (kind == "killed") {
      j["x0"] = x0;
      j["kill_radius"] = kill_radius;
      j["refinements"] = refinements;
      j["killed_tol"] = killed_tol;
    } else {
      j["q"] = q;
      j["x"] = x;
      if (kind == "resolvent-id") {
        j["y"] = y;
        j["margin"] = resolvent_margin;
      } else {
        j["x0"] = x0;
      }
    }
    return j;
  }
};

int cmd_verify(const std::string& kind, const ModelArgs& ma, const VerifyArgs& va, const std::string& out) {
  const auto started = utc_now();
  const auto model = ma.load();
  const auto cfg = va.config();
  levy::DecompositionReport rep;
  if (kind == "doob-meyer") {
    rep = levy::verify_doob_meyer(model, va.q.at(0), va.x, cfg);
  } else if (kind == "tanaka") {
    rep = levy::verify_tanaka(model, va.x, cfg);
  } else if (kind == "resolvent-id") {
    rep = levy::verify_resolvent_identity(model, va.q.at(0), va.x, va.y, cfg);
  } else {
    rep = levy::verify_killed_invariance(model, va.x0, cfg, va.kill_radius);
  }
  Sink sink(out);
  sink.emit("report.json", rep.to_json().dump(2) + "\n");
  sink.emit("samples.csv", rep.samples_csv(), false);
  sink.manifest("verify " + kind, model, va.echo(kind), started);
  std::cerr << kind << ": " << levy::to_string(rep.verdict) << '\n';
  return rep.verdict == levy::Verdict::Pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolvent, local-time and Tanaka decomposition tools for one-dimensional Levy processes"};
  app.set_version_flag("--version", std::string(LEVY_VERSION));
  app.require_subcommand(1);

  std::string out;
  auto add_out = [&](CLI::App* c) { c->add_option("--out", out, "Output directory"); };

  ModelArgs ma;
  std::vector<double> u = {0.0, 1.0, 2.0};
  auto* sym = app.add_subcommand("symbol", "Tabulate the Levy symbol");
  ma.add(sym);
  sym->add_option("--u", u, "Frequencies")->delimiter(',');
  add_out(sym);

  bool no_probes = false;
  auto* chk = app.add_subcommand("check", "Condition report as JSON");
  ma.add(chk);
  chk->add_flag("--no-probes", no_probes, "Skip numeric probes where an analytic rule applies");
  add_out(chk);

  std::vector<double> hx = {1.0};
  std::vector<double> hq;
  double htol = 1e-9;
  bool hforce = false;
  auto* hc = app.add_subcommand("h", "Tabulate the renormalized zero-resolvent h");
  ma.add(hc);
  hc->add_option("--x", hx, "Points x")->delimiter(',');
  hc->add_option("--q", hq, "Optional q grid for the h_q convergence table")->delimiter(',');
  hc->add_option("--tol", htol, "Quadrature tolerance")->capture_default_str();
  hc->add_flag("--force", hforce, "Proceed when a condition check is inconclusive");
  add_out(hc);

  SimArgs sa;
  double sx0 = 0.0;
  auto* sim = app.add_subcommand("simulate", "Simulate sample paths to CSV");
  ma.add(sim);
  sa.add(sim);
  sim->add_option("--x0", sx0, "Starting point")->capture_default_str();
  add_out(sim);

  auto* ver = app.add_subcommand("verify", "Monte Carlo verification experiments");
  ver->require_subcommand(1);
  std::vector<std::pair<std::string, VerifyArgs>> kinds = {
      {"doob-meyer", {}}, {"tanaka", {}}, {"resolvent-id", {}}, {"killed", {}}};
  std::vector<CLI::App*> vsubs;
  for (auto& [kind, va] : kinds) {
    auto* s = ver->add_subcommand(kind, "verify " + kind);
    ma.add(s);
    va.add(s, kind);
    add_out(s);
    vsubs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*sym) return cmd_symbol(ma, u, out);
    if (*chk) return cmd_check(ma, no_probes, out);
    if (*hc) return cmd_h(ma, hx, hq, htol, hforce, out);
    if (*sim) return cmd_simulate(ma, sa, sx0, out);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (*vsubs[i]) return cmd_verify(kinds[i].first, ma, kinds[i].second, out);
    }
  } catch (const levy::ConditionViolation& e) {
    std::cerr << "error: " << e.what() << '\n' << e.report().to_json().dump(2) << '\n';
    return kCondition;
  } catch (const levy::EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
