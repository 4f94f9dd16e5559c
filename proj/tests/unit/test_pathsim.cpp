#include <doctest.h>

#include <cmath>

#include "levy/pathsim.hpp"
#include "levy/symbol.hpp"

using namespace levy;

namespace {

bool cf_close(const LevyModel& m, const std::vector<double>& xt, double u, double t, double k = 4.0) {
  auto e = empirical_cf(xt, u);
  const auto target = model_cf(m, u, t);
  return std::abs(e.mean - target) <= k * e.std_error + 1e-12;
}

}  // namespace

TEST_SUITE("pathsim") {

TEST_CASE("pure drift is exact") {
  SimConfig cfg;
  cfg.n_steps = 100;
  cfg.n_paths = 3;
  cfg.x0 = 0.25;
  PathSimulator sim(LevyModel::brownian(1.0, 0.0), cfg);
  std::vector<double> s;
  sim.simulate(2, s);
  REQUIRE(s.size() == 101);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(0.25 + sim.t_grid()[i]).epsilon(1e-14));
  CHECK(sim.t_grid().back() == 1.0);
}

TEST_CASE("Brownian moments") {
  SimConfig cfg;
  cfg.n_steps = 4;
  cfg.n_paths = 100'000;
  cfg.seed = 7;
  auto xt = PathSimulator(preset("brownian"), cfg).terminal_values();
  double m = 0, v = 0;
  for (double x : xt) m += x;
  m /= xt.size();
  for (double x : xt) v += (x - m) * (x - m);
  v /= xt.size() - 1;
  CHECK(std::abs(m) < 4.0 / std::sqrt(1e5));
  CHECK(std::abs(v - 1.0) < 4.0 * std::sqrt(2.0 / 1e5));
}

TEST_CASE("stable characteristic function") {
  SimConfig cfg;
  cfg.n_steps = 5;
  cfg.n_paths = 50'000;
  cfg.seed = 11;
  for (std::string name : {"stable", "stable_asym"}) {
    auto m = preset(name);
    PathSimulator sim(m, cfg);
    CHECK(sim.scheme() == Scheme::ExactIncrement);
    auto xt = sim.terminal_values();
    for (double u : {0.5, 1.0, 2.0}) {
      CAPTURE(name);
      CAPTURE(u);
      CHECK(cf_close(m, xt, u, 1.0));
    }
  }
}

TEST_CASE("characteristic function for every simulable preset") {
  SimConfig cfg;
  cfg.n_steps = 10;
  cfg.n_paths = 20'000;
  cfg.seed = 3;
  cfg.small_jump_cutoff = 1e-2;
  for (const auto& name : preset_names()) {
    auto m = preset(name);
    PathSimulator sim(m, cfg);
    auto xt = sim.terminal_values();
    for (double u : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      CAPTURE(name);
      CAPTURE(u);
      CHECK(cf_close(m, xt, u, 1.0));
    }
  }
}

TEST_CASE("shrinking the cutoff reduces the bias") {
  auto m = preset("truncated_stable");
  SimConfig cfg;
  cfg.n_steps = 4;
  cfg.n_paths = 20'000;
  cfg.gaussian_compensation = false;
  double prev = 1e300;
  for (double d : {0.2, 0.1, 0.05}) {
    cfg.small_jump_cutoff = d;
    auto e = empirical_cf(PathSimulator(m, cfg).terminal_values(), 1.0);
    const double bias = std::abs(e.mean - model_cf(m, 1.0, 1.0));
    CHECK(bias < prev);
    prev = bias;
  }
}

TEST_CASE("paths are a pure function of seed and index") {
  SimConfig cfg;
  cfg.n_steps = 50;
  cfg.n_paths = 10;
  cfg.seed = 99;
  for (std::string name : {"stable_asym", "tempered_stable"}) {
    PathSimulator a(preset(name), cfg), b(preset(name), cfg);
    std::vector<double> s1, s2, s3;
    a.simulate(4, s1);
    a.simulate(5, s3);
    b.simulate(4, s2);
    CHECK(s1 == s2);
    CHECK(s1 != s3);
    CHECK(sample_path(preset(name), cfg, 4).states == s1);
  }
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
}

TEST_CASE("empirical cf edge cases") {
  std::vector<double> v(10, 0.3);
  auto e0 = empirical_cf(v, 0.0);
  CHECK(e0.mean == std::complex<double>(1.0, 0.0));
  auto e1 = empirical_cf(v, 2.0);
  CHECK(std::abs(e1.mean - std::polar(1.0, 0.6)) < 1e-14);
  CHECK(e1.std_error == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("invalid configurations") {
  SimConfig bad;
  bad.n_steps = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SimConfig neg;
  neg.horizon = -1.0;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  SimConfig exact;
  exact.scheme = Scheme::ExactIncrement;
  CHECK_THROWS_AS(PathSimulator(preset("tempered_stable"), exact), std::invalid_argument);
}

TEST_CASE("compound Poisson rate grows as the cutoff shrinks") {
  SimConfig a, b;
  a.small_jump_cutoff = 0.1;
  b.small_jump_cutoff = 0.01;
  auto m = preset("truncated_stable");
  CHECK(PathSimulator(m, b).jump_rate() > PathSimulator(m, a).jump_rate());
  CHECK(PathSimulator(preset("stable"), a).jump_rate() == 0.0);
}

}  // TEST_SUITE
