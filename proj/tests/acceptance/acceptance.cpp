// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "levy/conditions.hpp"
#include "levy/decomposition.hpp"
#include "levy/localtime.hpp"
#include "levy/pathsim.hpp"
#include "levy/resolvent.hpp"
#include "levy/symbol.hpp"

using namespace levy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool passed(const TestStat& t) { return t.verdict == Verdict::Pass; }

// Every check appends to `detail` on failure.
struct Tally {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Outcome c1_stable_h() {
  Tally t;
  double worst = 0.0;
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (double beta : {-0.9, 0.0, 0.5, 0.9}) {
      auto m = LevyModel::stable_from_scale(alpha, 1.0, beta);
      for (double x : {-2.0, -0.5, 0.5, 2.0}) {
        const double ref = stable_closed_form_h(m, x);
        const double h = renormalized_zero_resolvent(m, x).h;
        const double rel = std::abs(h - ref) / std::abs(ref);
        worst = std::max(worst, rel);
        t.require(rel <= 1e-4, fmt("alpha=%g beta=%g x=%g rel=%.2e", alpha, beta, x, rel));
      }
    }
  }
  if (t.ok) t.detail = fmt("48 points, worst relative error %.2e", worst);
  return {t.ok, t.detail};
}

Outcome c2_brownian() {
  Tally t;
  auto m = preset("brownian");
  double worst = 0.0;
  for (int x = -3; x <= 3; ++x) {
    const double e = std::abs(renormalized_zero_resolvent(m, x).h - std::abs(x));
    worst = std::max(worst, e);
    t.require(e <= 1e-6, fmt("h(%d) error %.2e", x, e));
  }
  for (double q : {0.5, 1.0, 2.0}) {
    for (double x : {0.0, 1.0}) {
      const double ref = std::exp(-std::sqrt(2.0 * q) * x) / std::sqrt(2.0 * q);
      const double e = std::abs(resolvent_density(m, q, x).value - ref);
      worst = std::max(worst, e);
      t.require(e <= 1e-6, fmt("r_%g(%g) error %.2e", q, x, e));
    }
  }
  if (t.ok) t.detail = fmt("13 values, worst absolute error %.2e", worst);
  return {t.ok, t.detail};
}

Outcome c3_resolvent_identity() {
  Tally t;
  ExperimentConfig c;
  c.sim.n_paths = 10'000;
  c.sim.n_steps = 10'000;
  c.sim.horizon = 8.0;
  c.sim.seed = 301;
  c.eps = 0.01;
  c.resolvent_margin = 0.02;
  c.keep_samples = false;

  auto b = verify_resolvent_identity(preset("brownian"), 1.0, 0.0, 0.0, c);
  const auto& tb = b.test("discounted_local_time");
  t.require(std::abs(tb.target - 1.0 / std::sqrt(2.0)) < 1e-8, "Brownian target is not 1/sqrt(2)");
  t.require(passed(tb), fmt("Brownian mean %.5f vs %.5f (se %.5f, margin %.5f)", tb.estimate, tb.target,
                            tb.std_error, tb.margin));
  t.require(tb.margin <= 0.03 * tb.target, fmt("Brownian margin %.2f%% > 3%%", 100 * tb.margin / tb.target));

  // The stable kernel has a cusp at 0, so the level sits away from the start.
  c.sim.seed = 302;
  c.sim.n_steps = 8000;
  c.eps = 0.02;
  auto s = verify_resolvent_identity(preset("stable_asym"), 1.0, 0.5, 0.0, c);
  const auto& ts = s.test("discounted_local_time");
  t.require(passed(ts), fmt("stable mean %.5f vs %.5f (se %.5f, margin %.5f)", ts.estimate, ts.target,
                            ts.std_error, ts.margin));
  t.require(ts.margin <= 0.03 * ts.target, fmt("stable margin %.2f%% > 3%%", 100 * ts.margin / ts.target));
  if (t.ok) {
    t.detail = fmt("Brownian %.5f vs %.5f (z %.2f, margin %.1f%%); stable(1.5,0.5) %.5f vs %.5f (z %.2f, margin %.1f%%)",
                   tb.estimate, tb.target, tb.z_score, 100 * tb.margin / tb.target, ts.estimate, ts.target,
                   ts.z_score, 100 * ts.margin / ts.target);
  }
  return {t.ok, t.detail};
}

Outcome c4_martingale() {
  Tally t;
  ExperimentConfig c;
  c.sim.n_paths = 10'000;
  c.sim.n_steps = 2000;
  c.keep_samples = false;
  double worst_z = 0.0;
  std::uint64_t seed = 400;
  for (const char* name : {"brownian", "stable", "stable_asym"}) {
    for (double q : {1.0, 0.1}) {
      c.sim.seed = ++seed;
      auto r = verify_doob_meyer(preset(name), q, 0.0, c);
      for (const auto& ts : r.tests) {
        worst_z = std::max(worst_z, std::abs(ts.z_score));
        t.require(passed(ts) && ts.threshold <= 4.0,
                  fmt("%s q=%g %s z=%.2f", name, q, ts.name.c_str(), ts.z_score));
      }
    }
  }
  if (t.ok) t.detail = fmt("3 models x q in {1, 0.1}, 3 tests each, max |z| %.2f", worst_z);
  return {t.ok, t.detail};
}

Outcome c5_tanaka() {
  Tally t;
  ExperimentConfig c;
  c.sim.n_paths = 10'000;
  c.sim.n_steps = 2000;
  c.sim.seed = 501;
  c.keep_samples = false;
  c.q_trend = {1.0, 0.1, 0.01};
  auto b = verify_tanaka(preset("brownian"), 0.0, c);
  const auto& raw = b.test("raw_h_vs_local_time");
  t.require(passed(raw), fmt("Brownian E|X_1| %.5f vs E L %.5f (se %.5f, margin %.5f)", raw.estimate,
                             raw.target, raw.std_error, raw.margin));
  t.require(passed(b.test("mean_N")), "Brownian mean remainder");
  std::string detail = fmt("Brownian E|X_1| %.5f vs E L %.5f (z %.2f)", raw.estimate, raw.target, raw.z_score);
  for (const char* name : {"stable", "stable_asym"}) {
    c.sim.seed += 1;
    auto r = verify_tanaka(preset(name), 0.0, c);
    const auto& mn = r.test("mean_N");
    t.require(passed(mn) && mn.margin == 0.0, fmt("%s mean N z=%.2f", name, mn.z_score));
    t.require(passed(r.test("minus_M_q_to_N_trend")), fmt("%s -M^q -> N trend not decreasing", name));
    const auto& tr = r.trends.at("abs_minus_M_q_minus_N");
    detail += fmt("; %s mean N z %.2f, |-M^q - N|:", name, mn.z_score);
    for (const auto& row : tr) detail += fmt(" %.4f", row.value);
  }
  return {t.ok, t.ok ? detail : t.detail};
}

Outcome c6_conditions() {
  Tally t;
  const CheckOptions o{true, 40};
  for (const char* name : {"stable", "stable_asym", "truncated_stable", "tempered_stable",
                           "spectrally_negative", "integrable_drift"}) {
    auto m = preset(name);
    t.require(check_A(m, o).verdict == Verdict::Pass, fmt("%s (A) not Pass", name));
    t.require(check_B(m, o).verdict == Verdict::Pass, fmt("%s (B) not Pass", name));
  }
  t.require(check_A(preset("asymmetric_cauchy"), o).verdict == Verdict::Fail, "asymmetric Cauchy (A) not Fail");
  t.require(check_L3(preset("stable"), o).verdict == Verdict::Pass, "stable (L3) not Pass");
  t.require(check_L3(preset("truncated_stable"), o).verdict == Verdict::Fail, "truncated (L3) not Fail");
  t.require(check_L3(preset("tempered_stable"), o).verdict == Verdict::Fail, "tempered (L3) not Fail");
  if (t.ok) t.detail = "6 presets (A),(B) Pass; asymmetric Cauchy (A) Fail; (L3) stable Pass, truncated/tempered Fail";
  return {t.ok, t.detail};
}

Outcome c7_properties() {
  Tally t;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lu(-2.0, 2.0);
  for (const auto& name : preset_names()) {
    auto m = preset(name);
    for (int k = 0; k < 64; ++k) {
      const double u = std::pow(10.0, lu(rng));
      auto p = symbol(m, u), n = symbol(m, -u);
      const double tol = 1e-6 * std::max(1.0, std::abs(p));
      t.require(std::abs(p.real() - n.real()) <= tol && std::abs(p.imag() + n.imag()) <= tol,
                fmt("%s symbol symmetry at u=%g", name.c_str(), u));
    }
  }
  for (const char* name : {"stable", "stable_asym", "brownian", "tempered_stable"}) {
    auto m = preset(name);
    const double r0 = resolvent_at_zero(m, 1.0).value;
    for (double x : {-2.0, -0.3, 0.3, 2.0}) {
      const double r = resolvent_density(m, 1.0, x).value;
      t.require(r >= -1e-8 && r <= r0 + 1e-8, fmt("%s r_q(%g) out of [0, r_q(0)]", name, x));
      auto h = renormalized_zero_resolvent(m, x);
      t.require(h.h >= -h.error_estimate, fmt("%s h(%g) < 0", name, x));
    }
  }
  for (const char* name : {"brownian", "stable", "stable_asym"}) {
    auto scan = h_q_convergence_scan(preset(name), 1.0, {1.0, 0.1, 0.01, 0.001});
    t.require(scan.strictly_decreasing, fmt("%s h_q gap not decreasing", name));
  }
  SimConfig sc;
  sc.n_steps = 1000;
  sc.seed = 70;
  for (const char* name : {"stable_asym", "tempered_stable", "brownian"}) {
    auto p = sample_path(preset(name), sc, 2);
    t.require(p.states == sample_path(preset(name), sc, 2).states, fmt("%s path not reproducible", name));
    double prev = 0.0;
    for (double tt : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double v = occupation_local_time(p, 0.0, tt, 0.05).value;
      t.require(v >= prev, fmt("%s local time not monotone", name));
      prev = v;
    }
    auto a = occupation_between(p.t_grid, p.states, 0.0, 0.0, 0.45, 0.05);
    auto b = occupation_between(p.t_grid, p.states, 0.0, 0.45, 1.0, 0.05);
    auto c = occupation_between(p.t_grid, p.states, 0.0, 0.0, 1.0, 0.05);
    t.require(a.n_hits + b.n_hits == c.n_hits && std::abs(a.value + b.value - c.value) <= 1e-13 * (1 + c.value),
              fmt("%s local time not additive", name));
  }
  if (t.ok) t.detail = "symbol symmetry, 0<=r_q<=r_q(0), h>=0, h_q gap trend, local-time monotone/additive, seed determinism";
  return {t.ok, t.detail};
}

Outcome c8_killed() {
  Tally t;
  ExperimentConfig c;
  c.sim.n_paths = 10'000;
  c.sim.n_steps = 2000;
  c.sim.horizon = 0.5;
  c.sim.seed = 801;
  c.kill_refinements = 3;
  c.keep_samples = false;
  auto r = verify_killed_invariance(preset("stable"), 1.0, c, 0.1);
  const auto& km = r.test("killed_mean");
  const double rel = (km.estimate - km.target) / km.target;
  t.require(passed(km) && std::abs(rel) <= 0.10, fmt("killed mean %.5f vs h(1) %.5f (%.1f%%)", km.estimate, km.target, 100 * rel));
  t.require(passed(r.test("refinement_monotone")), "kill-radius refinement not monotone");
  t.require(passed(r.test("monitoring_bias_upward")), "grid-monitoring bias not upward");
  std::string trend;
  for (const auto& row : r.trends.at("kill_radius")) trend += fmt(" %.4f", row.value);
  const auto& mb = r.test("monitoring_bias_upward");
  if (t.ok) {
    t.detail = fmt("%.5f vs h(1)=%.5f (%+.1f%%); radius trend:%s; coarser monitoring shift %+.4f (z %.1f)",
                   km.estimate, km.target, 100 * rel, trend.c_str(), mb.estimate, mb.z_score);
  }
  return {t.ok, t.detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form h for stable laws", c1_stable_h},
      {"Brownian h and r_q oracle", c2_brownian},
      {"discounted local time vs r_q", c3_resolvent_identity},
      {"fixed-q martingale suite", c4_martingale},
      {"Tanaka suite", c5_tanaka},
      {"condition regression table", c6_conditions},
      {"property suites", c7_properties},
      {"killed-process invariance", c8_killed},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s  %s [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
