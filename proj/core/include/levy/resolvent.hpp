#pragma once

#include <vector>

#include "levy/levy_model.hpp"
#include "levy/quadrature.hpp"

namespace levy {

struct ResolventOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  /// Skip the condition (A)/(B) precondition. Analytic failures are still
  /// refused unless `force` is also set.
  bool override_conditions = false;
  bool force = false;
};

struct ResolventValue {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  long function_evals = 0;
};

struct ZeroResolventValue {
  double x = 0.0;
  double h = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// r_q(x) = (1/pi) int_0^inf Re(e^{-iux} / (q - eta(u))) du.
ResolventValue resolvent_density(const LevyModel& model, double q, double x,
                                 const ResolventOptions& opts = {});

/// r_q(0) = (1/pi) int_0^inf Re(1 / (q - eta(u))) du.
ResolventValue resolvent_at_zero(const LevyModel& model, double q,
                                 const ResolventOptions& opts = {});

/// h_q(x) = r_q(0) - r_q(-x), evaluated as the single integral
/// (1/pi) int_0^inf Re((1 - e^{iux}) / (q - eta(u))) du.
ResolventValue h_q(const LevyModel& model, double q, double x, const ResolventOptions& opts = {});

/// (2/pi) int_0^inf Re((1 - cos ux) / (q - eta(u))) du = h_q(x) + h_q(-x).
ResolventValue h_q_symmetric_sum(const LevyModel& model, double q, double x,
                                 const ResolventOptions& opts = {});

/// h(x) = (1/pi) int_0^inf Re((e^{iux} - 1) / eta(u)) du.
ZeroResolventValue renormalized_zero_resolvent(const LevyModel& model, double x,
                                               const ResolventOptions& opts = {});

struct HqScanRow {
  double q = 0.0;
  double h_q = 0.0;
  double gap = 0.0;
  double error_estimate = 0.0;
};

struct HqScan {
  double x = 0.0;
  double h = 0.0;
  double h_error = 0.0;
  std::vector<HqScanRow> rows;
  /// Index from which the gap column is strictly decreasing.
  std::size_t decreasing_from = 0;
  bool strictly_decreasing = true;
  /// True when the gaps decrease over at least the last two steps.
  bool eventually_decreasing = true;
};

/// Default q grid {1, 1e-1, ..., 1e-4}.
std::vector<double> default_q_grid();

HqScan h_q_convergence_scan(const LevyModel& model, double x, const std::vector<double>& q_grid,
                            const ResolventOptions& opts = {});

}  // namespace levy
