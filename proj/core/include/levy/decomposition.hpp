#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/conditions.hpp"
#include "levy/levy_model.hpp"
#include "levy/pathsim.hpp"

namespace levy {

struct ExperimentConfig {
  SimConfig sim;
  /// Occupation half-width; <= 0 picks default_epsilon from a pilot path.
  double eps = 0.0;
  double z_threshold = 4.0;
  int grid_nodes = 2048;
  double grid_tol = 1e-8;
  /// q values for the -M^q -> N trend in verify_tanaka.
  std::vector<double> q_trend = {1.0, 0.1, 0.01};
  /// Declared relative discretization margin for verify_resolvent_identity.
  double resolvent_margin = 0.03;
  /// Extra absolute margin added to the raw Tanaka comparison.
  double tanaka_time_margin = 0.0;
  /// Relative tolerance of the killed-process check.
  double killed_tolerance = 0.10;
  int kill_refinements = 3;
  int min_paths = 30;
  bool keep_samples = true;
  bool force = false;
  unsigned workers = 0;
};

enum class TestKind { ZeroMean, Agreement, Trend, Exact };

struct TestStat {
  std::string name;
  TestKind kind = TestKind::ZeroMean;
  double estimate = 0.0;
  double target = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  double threshold = 4.0;
  /// Absolute margin allowed on top of threshold * std_error.
  double margin = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

struct TrendRow {
  double parameter = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

struct DecompositionSample {
  std::uint64_t path_id = 0;
  double x = 0.0;
  std::optional<double> q;
  double M_q = 0.0;
  double N_tilde = 0.0;
  double L_hat = 0.0;
  double h_end = 0.0;
  double h_start = 0.0;
  double increment = 0.0;
  double regressor = 0.0;
};

struct DecompositionReport {
  std::string experiment;
  std::string model;
  std::size_t n_paths = 0;
  double eps = 0.0;
  std::vector<TestStat> tests;
  std::map<std::string, std::vector<TrendRow>> trends;
  std::vector<DecompositionSample> samples;
  std::vector<std::string> notes;
  Verdict verdict = Verdict::Inconclusive;

  const TestStat& test(const std::string& name) const;
  nlohmann::json to_json() const;
  /// path_id,x,q,M_q,N_tilde,L_hat,h_end,h_start,increment,regressor
  std::string samples_csv() const;
};

/// r_q(x - X_T) - r_q(x - X_0) - q int_0^T r_q(x - X_s) ds + L.
double doob_meyer_martingale(double r_end, double r_start, double q_time_integral, double local_time);
/// h(X_T - x) - h(X_0 - x) - L.
double tanaka_remainder(double h_end, double h_start, double local_time);

/// Mean-zero and midpoint-increment tests of the fixed-q martingale M^{q,x}.
DecompositionReport verify_doob_meyer(const LevyModel& model, double q, double x,
                                      const ExperimentConfig& cfg);
/// Mean-zero and increment tests of the Tanaka remainder, the raw comparison
/// of E h(X_T - x) - h(X_0 - x) with E L, and the q -> 0 trends.
DecompositionReport verify_tanaka(const LevyModel& model, double x, const ExperimentConfig& cfg);
/// Mean discounted local time at x for paths from y against r_q(x - y).
DecompositionReport verify_resolvent_identity(const LevyModel& model, double q, double x, double y,
                                              const ExperimentConfig& cfg);
/// Mean of h(X_T) 1{|X| >= kill_radius on the grid} from x0 against h(x0),
/// with kill radii kill_radius / 2^k.
DecompositionReport verify_killed_invariance(const LevyModel& model, double x0,
                                             const ExperimentConfig& cfg, double kill_radius);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};
Summary summarize(const std::vector<double>& v);

}  // namespace levy
