#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levy/levy_model.hpp"

namespace levy {

enum class Scheme { ExactIncrement, CompoundPoissonApprox };
std::string to_string(Scheme s);

struct SimConfig {
  int n_steps = 1000;
  double horizon = 1.0;
  int n_paths = 1000;
  double x0 = 0.0;
  std::uint64_t seed = 1;
  /// Jumps smaller than this are dropped (CompoundPoissonApprox only).
  double small_jump_cutoff = 1e-3;
  /// Replace the dropped small jumps by a Brownian term of equal variance.
  bool gaussian_compensation = true;
  /// Defaults to ExactIncrement for Stable and Brownian, otherwise the
  /// compound Poisson approximation.
  std::optional<Scheme> scheme;

  void validate() const;
};

struct PathSample {
  std::vector<double> t_grid;
  std::vector<double> states;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  Scheme scheme = Scheme::ExactIncrement;
  std::string model_label;
};

/// Independent 64-bit stream seed for path `index` of a run seeded by `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Reusable simulator; tables for the compound Poisson scheme are built once.
/// Paths are a pure function of (seed, path index), so any subset can be
/// regenerated in any order.
class PathSimulator {
 public:
  PathSimulator(const LevyModel& model, const SimConfig& cfg);
  ~PathSimulator();
  PathSimulator(PathSimulator&&) noexcept;
  PathSimulator& operator=(PathSimulator&&) noexcept;

  Scheme scheme() const;
  const SimConfig& config() const;
  const LevyModel& model() const;
  double dt() const;
  const std::vector<double>& t_grid() const;

  /// Fills `states` (resized to n_steps + 1) with path `index`.
  void simulate(std::uint64_t index, std::vector<double>& states) const;
  PathSample sample_path(std::uint64_t index) const;
  /// X_T for every path 0..n_paths-1.
  std::vector<double> terminal_values() const;

  /// Rate of simulated jumps per unit time (0 for exact schemes).
  double jump_rate() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

PathSample sample_path(const LevyModel& model, const SimConfig& cfg, std::uint64_t index = 0);

struct CfEstimate {
  std::complex<double> mean{};
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Monte Carlo mean of e^{iuX} over `values`, with the standard error of the
/// complex mean (sqrt of summed component variances over n).
CfEstimate empirical_cf(const std::vector<double>& values, double u);

/// e^{t eta(u)}.
std::complex<double> model_cf(const LevyModel& model, double u, double t);

}  // namespace levy
