#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace levy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Family { Stable, TruncatedStable, TemperedStable, BrownianWithDrift, CustomTriplet };

std::string to_string(Family f);
/// Accepts the snake_case names used in model files ("stable",
/// "truncated_stable", "tempered_stable", "brownian", "custom").
Family family_from_string(const std::string& name);
const std::vector<std::string>& family_names();

class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// c * y^{-alpha-1} * exp(-lambda*y) on 0 < y <= support (one side of the
/// jump density, written for positive y).
struct PowerLawTerm {
  double c = 0.0;
  double alpha = 1.5;
  double lambda = 0.0;
  double support = kInf;

  double density(double y) const;
};

/// One half-line of the jump density. Either a sum of power-law terms or an
/// arbitrary handle with declared metadata.
struct JumpSide {
  std::vector<PowerLawTerm> terms;
  std::function<double(double)> handle;

  /// Density behaves like coefficient * y^{-1-s} as y -> 0.
  double singularity_index = 0.0;
  double near_zero_coefficient = 0.0;
  /// Exponential decay rate at infinity (0: none).
  double tail_rate = 0.0;
  /// Density ~ y^{-1-p} at infinity when tail_rate == 0 and support is infinite.
  double tail_index = 0.0;
  double support = 0.0;

  static JumpSide from_terms(std::vector<PowerLawTerm> terms);
  static JumpSide from_function(std::function<double(double)> density, double singularity_index,
                                double near_zero_coefficient, double tail_rate,
                                double tail_index, double support);

  bool empty() const;
  double density(double y) const;
  /// Integral of y^m * density over [lo, hi] (hi clipped to the support).
  double moment(double m, double lo, double hi) const;
  bool finite_second_moment() const;
  bool finite_first_moment_at_infinity() const;
};

struct StableParams {
  double alpha = 1.5;
  double c_plus = 0.0;
  double c_minus = 0.0;
  double d = 0.0;
  double beta = 0.0;
};

/// c(alpha) = Gamma(alpha+1) sin(pi alpha / 2) / pi.
double stable_c(double alpha);

/// Levy triplet (b, a, nu) with nu given by two one-sided densities. For the
/// Stable family the symbol is the closed form -d|u|^alpha(1 - i beta sgn(u)
/// tan(pi alpha/2)); b and a must then be zero.
struct LevyModel {
  Family family = Family::BrownianWithDrift;
  double b = 0.0;
  double a = 0.0;
  JumpSide plus;
  JumpSide minus;
  std::optional<StableParams> stable;
  std::string label;

  static LevyModel stable_from_levy_measure(double alpha, double c_plus, double c_minus);
  static LevyModel stable_from_scale(double alpha, double d, double beta);
  static LevyModel truncated_stable(double alpha, double c_plus, double c_minus,
                                    double b = 0.0, double a = 0.0);
  static LevyModel tempered_stable(double alpha_plus, double alpha_minus, double c_plus,
                                   double c_minus, double lambda_plus, double lambda_minus,
                                   double b = 0.0, double a = 0.0);
  static LevyModel brownian(double b, double a);
  static LevyModel custom(double b, double a, JumpSide plus, JumpSide minus,
                          std::string label = "custom");

  void validate() const;
  bool has_jumps() const;
  /// True when nu is mirror symmetric and b == 0, so Im eta vanishes.
  bool is_symmetric() const;
  /// Largest singularity index among sides with a positive near-zero coefficient.
  double activity_index() const;
  bool finite_second_moment() const;
  bool finite_first_moment_at_infinity() const;
  /// b + int_{|y|>1} y nu(dy); NaN when the tail moment is infinite.
  double mean_drift() const;
  /// kappa with -Re eta(u) ~ u^kappa as u -> 0.
  double low_frequency_index() const;
  /// b in the truncated Levy-Khintchine form equivalent to this model.
  double truncation_drift() const;
};

/// Example presets keyed by name: "stable", "stable_asym", "truncated_stable",
/// "tempered_stable", "integrable_drift", "spectrally_negative", "brownian",
/// "asymmetric_cauchy", "compound_poisson".
LevyModel preset(const std::string& name);
const std::vector<std::string>& preset_names();

}  // namespace levy
