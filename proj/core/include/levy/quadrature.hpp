#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace levy {

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<std::complex<double>(double)>;

enum class Acceleration { None, AlternatingSeries };

/// Parameters for integrals over [0, inf) whose integrand may be singular at 0
/// and oscillatory in the tail.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Boundary between the graded head [0, u1] and the tail [u1, inf).
  double split_point = 1.0;
  int max_tail_periods = 400;
  Acceleration acceleration = Acceleration::AlternatingSeries;
  /// Exponent s with f(u) ~ u^s as u -> 0 (s > -1). Negative values switch on
  /// node clustering at the origin.
  double head_singularity = 0.0;
  long max_evals = 4'000'000;

  void validate() const;
  double tolerance_for(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double tail_truncation_bound = 0.0;
  bool converged = true;
  long function_evals = 0;

  QuadratureResult& operator+=(const QuadratureResult& other);
  QuadratureResult& operator-=(const QuadratureResult& other);
};

struct ComplexQuadratureResult {
  std::complex<double> value{};
  double error_estimate = 0.0;
  bool converged = true;
  long function_evals = 0;

  ComplexQuadratureResult& operator+=(const ComplexQuadratureResult& other);
};

/// Globally adaptive Gauss-Kronrod (10/21) integration over a finite interval.
/// The initial partition is `initial_cells` equal pieces.
QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    double abs_tol, double rel_tol,
                                    long max_evals = 400'000,
                                    int initial_cells = 1);

ComplexQuadratureResult integrate_interval_complex(const ComplexFunction& f, double a,
                                           double b, double abs_tol,
                                           double rel_tol,
                                           long max_evals = 400'000,
                                           int initial_cells = 1);

/// Integral of f over [0, inf).
///
/// The head [0, split_point] is integrated on a graded mesh u = u1 * t^p with
/// p picked from `head_singularity`. Without a period the tail is mapped to
/// u = u1 * e^v and summed panel by panel; the geometric rate of the last
/// panels gives the truncation bound. With a period the tail is summed over
/// half periods and, for AlternatingSeries, the partial sums are extrapolated
/// with Wynn's epsilon algorithm.
QuadratureResult integrate_semi_infinite(const RealFunction& f,
                                         const QuadratureSpec& spec,
                                         std::optional<double> period = std::nullopt);

/// Tail decomposition f = smooth + oscillatory on [split_point, inf). The
/// smooth part is integrated without a period, the oscillatory part with one.
/// `whole` is still used on the head where the two parts may cancel.
struct TailSplit {
  RealFunction whole;
  RealFunction smooth;
  RealFunction oscillatory;
};

QuadratureResult integrate_semi_infinite(const TailSplit& f,
                                         const QuadratureSpec& spec,
                                         double period);

/// Smooth (non-oscillatory) tail integral over [a, inf) via u = a * e^v panels.
QuadratureResult integrate_smooth_tail(const RealFunction& f, double a,
                                       double abs_tol, double rel_tol,
                                       long max_evals = 2'000'000);

/// Integral of g(y) e^{i omega y} over [a, b] for smooth, non-oscillatory g,
/// using Levin collocation on geometrically growing panels. b may be +inf; the
/// sum then stops once 2|g(y)|/omega drops below the tolerance.
ComplexQuadratureResult integrate_fourier(const ComplexFunction& g, double omega,
                                          double a, double b, double abs_tol,
                                          double rel_tol);

enum class Integrability { Finite, Diverging, Inconclusive };

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

struct TrendPoint {
  double lo = 0.0;
  double hi = 0.0;
  double partial_integral = 0.0;
  double increment = 0.0;
};

struct ProbeResult {
  Integrability verdict = Integrability::Inconclusive;
  double finite_estimate = 0.0;
  std::vector<TrendPoint> evidence;
  std::string note;
};

/// Integrates |f| on nested subintervals exhausting `domain` (halving toward a
/// finite singular end, doubling toward an infinite end) and classifies the
/// trend of the increments. Finite: increments shrink geometrically with
/// ratio <= 0.9 (or vanish); Diverging: ratio >= 0.97 once increments are not
/// negligible. Anything else after `budget` levels is Inconclusive.
ProbeResult integrability_probe(const RealFunction& f, Interval domain,
                                int budget = 48);

std::string to_string(Integrability v);

}  // namespace levy
