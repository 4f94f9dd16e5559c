#include "levy/symbol.hpp"

#include <cmath>
#include <numbers>

#include "jump_integral.hpp"

namespace levy {
namespace {

using cd = std::complex<double>;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

cd stable_eta(const StableParams& p, double u) {
  if (u == 0.0) return {};
  const double mag = p.d * std::pow(std::abs(u), p.alpha);
  const double t = std::tan(std::numbers::pi * p.alpha / 2.0);
  return {-mag, mag * p.beta * sgn(u) * t};
}

cd stable_eta_prime(const StableParams& p, double u) {
  if (u == 0.0) return {};
  const double t = std::tan(std::numbers::pi * p.alpha / 2.0);
  const double g = p.d * p.alpha * std::pow(std::abs(u), p.alpha - 1.0);
  // d/du of -d|u|^a is -d a |u|^{a-1} sgn u; the imaginary part is even in |u|^a sgn u.
  return {-g * sgn(u), g * p.beta * t};
}

struct JumpValue {
  cd value;
  double error;
};

JumpValue jump_part(const LevyModel& m, double u, detail::JumpMode mode) {
  const double w = std::abs(u);
  const double tol = kSymbolAbsTol * std::min(1.0, w * w);
  auto p = detail::side_integral(m.plus, w, mode, tol / 2.0);
  auto n = detail::side_integral(m.minus, w, mode, tol / 2.0);
  if (!p.converged || !n.converged) {
    throw EvaluationError("jump integral did not converge", u, p.error + n.error);
  }
  cd v = p.value + std::conj(n.value);
  if (u < 0.0) v = mode == detail::JumpMode::Symbol ? std::conj(v) : -std::conj(v);
  return {v, p.error + n.error};
}

}  // namespace

EvaluationError::EvaluationError(const std::string& what, double u, double residual)
    : std::runtime_error(what + " at u=" + std::to_string(u) +
                         " (residual estimate " + std::to_string(residual) + ")"),
      u_(u),
      residual_(residual) {}

SymbolValue symbol_eval(const LevyModel& model, double u) {
  SymbolValue s;
  s.u = u;
  if (!std::isfinite(u)) throw EvaluationError("non-finite frequency", u, 0.0);
  if (u == 0.0) return s;
  cd eta;
  if (model.family == Family::Stable) {
    eta = stable_eta(*model.stable, u);
  } else {
    eta = cd(-0.5 * model.a * u * u, model.b * u);
    if (model.has_jumps()) {
      auto j = jump_part(model, u, detail::JumpMode::Symbol);
      eta += j.value;
      s.error_estimate = j.error;
    }
  }
  if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag())) {
    throw EvaluationError("non-finite symbol value", u, s.error_estimate);
  }
  s.re = eta.real();
  s.im = eta.imag();
  return s;
}

std::complex<double> symbol(const LevyModel& model, double u) {
  return symbol_eval(model, u).value();
}

std::complex<double> symbol_derivative(const LevyModel& model, double u) {
  switch (model.family) {
    case Family::Stable:
      return stable_eta_prime(*model.stable, u);
    case Family::BrownianWithDrift:
      return {-model.a * u, model.b};
    case Family::TruncatedStable:
    case Family::TemperedStable:
      return cd(-model.a * u, model.b) + jump_part(model, u, detail::JumpMode::Derivative).value;
    case Family::CustomTriplet: {
      const double h = 1e-4 * std::max(std::abs(u), 1e-6);
      return (symbol(model, u + h) - symbol(model, u - h)) / (2.0 * h);
    }
  }
  return {};
}

double stable_closed_form_h(const LevyModel& model, double x) {
  if (model.family != Family::Stable || !model.stable) {
    throw InvalidModel("stable_closed_form_h requires a stable model");
  }
  const auto& p = *model.stable;
  if (x == 0.0) return 0.0;
  const double pi = std::numbers::pi;
  const double c_neg = std::tgamma(1.0 - p.alpha) * std::sin(-pi * p.alpha / 2.0) / pi;
  const double t = std::tan(pi * p.alpha / 2.0);
  return c_neg * (1.0 - p.beta * sgn(x)) * std::pow(std::abs(x), p.alpha - 1.0) /
         (p.d * (1.0 + p.beta * p.beta * t * t));
}

}  // namespace levy
