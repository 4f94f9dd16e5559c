#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "levy/levy_model.hpp"

namespace levy {

/// Absolute accuracy target for numerically integrated symbols at |u| >= 1.
/// Below |u| = 1 the target scales like u^2 so that small-frequency ratios such
/// as u/eta(u) keep their relative accuracy.
inline constexpr double kSymbolAbsTol = 1e-9;

struct SymbolValue {
  double u = 0.0;
  double re = 0.0;
  double im = 0.0;
  double error_estimate = 0.0;

  std::complex<double> value() const { return {re, im}; }
};

class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double u, double residual);
  double u() const { return u_; }
  double residual() const { return residual_; }

 private:
  double u_;
  double residual_;
};

/// eta(u) = ibu - au^2/2 + int (e^{iuy} - 1 - iuy 1{|y|<=1}) nu(dy).
SymbolValue symbol_eval(const LevyModel& model, double u);

/// Shorthand for symbol_eval(model, u).value().
std::complex<double> symbol(const LevyModel& model, double u);

/// eta'(u): closed form for Stable and Brownian, the differentiated jump
/// integral for the truncated and tempered families, and a central difference
/// for custom triplets.
std::complex<double> symbol_derivative(const LevyModel& model, double u);

/// c(-alpha)(1 - beta sgn x)|x|^{alpha-1} / (d (1 + beta^2 tan^2(pi alpha/2))).
double stable_closed_form_h(const LevyModel& model, double x);

}  // namespace levy
