#include "levy/resolvent.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "levy/conditions.hpp"
#include "levy/symbol.hpp"

namespace levy {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void precheck(const LevyModel& model, bool need_B, const ResolventOptions& opts) {
  if (!opts.override_conditions) {
    require_conditions(model, need_B, opts.force);
    return;
  }
  if (opts.force) return;
  // Overriding skips the probes, not the analytic verdicts.
  if (analytic_A(model) == Verdict::Fail || (need_B && analytic_B(model) == Verdict::Fail)) {
    require_conditions(model, need_B, false);
  }
}

void require_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
}

// e^{iz} - 1 without cancellation for small z.
cd expm1_i(double z) {
  const double s = std::sin(0.5 * z);
  return {-2.0 * s * s, std::sin(z)};
}

QuadratureSpec make_spec(const ResolventOptions& opts, double x, double head_singularity) {
  QuadratureSpec spec;
  spec.abs_tol = opts.abs_tol * kPi;
  spec.rel_tol = opts.rel_tol;
  spec.head_singularity = head_singularity;
  spec.split_point = x == 0.0 ? 1.0 : std::max(1.0, 4.0 * kPi / std::abs(x));
  spec.max_tail_periods = 2000;
  return spec;
}

ResolventValue finish(const QuadratureResult& r, double scale) {
  ResolventValue v;
  v.value = r.value * scale;
  v.error_estimate = r.error_estimate * std::abs(scale);
  v.converged = r.converged;
  v.function_evals = r.function_evals;
  return v;
}

// Exponent of the h integrand at u -> 0 (Re((e^{iux}-1)/eta) ~ u^{1-kappa}).
double h_head_singularity(const LevyModel& model) {
  const double kappa = model.family == Family::Stable ? model.stable->alpha
                                                      : model.low_frequency_index();
  return kappa < 2.0 ? 1.0 - kappa : 0.0;
}

}  // namespace

ResolventValue resolvent_density(const LevyModel& model, double q, double x,
                                 const ResolventOptions& opts) {
  require_q(q);
  precheck(model, false, opts);
  if (x == 0.0) return resolvent_at_zero(model, q, ResolventOptions{opts.abs_tol, opts.rel_tol, true, true});
  auto f = [&](double u) {
    if (u == 0.0) return 1.0 / q;
    const cd den = q - symbol(model, u);
    return (std::polar(1.0, -u * x) / den).real();
  };
  auto r = integrate_semi_infinite(f, make_spec(opts, x, 0.0), 2.0 * kPi / std::abs(x));
  return finish(r, 1.0 / kPi);
}

ResolventValue resolvent_at_zero(const LevyModel& model, double q, const ResolventOptions& opts) {
  require_q(q);
  precheck(model, false, opts);
  auto f = [&](double u) { return (1.0 / (q - symbol(model, u))).real(); };
  auto r = integrate_semi_infinite(f, make_spec(opts, 0.0, 0.0));
  return finish(r, 1.0 / kPi);
}

ResolventValue h_q(const LevyModel& model, double q, double x, const ResolventOptions& opts) {
  require_q(q);
  precheck(model, false, opts);
  if (x == 0.0) return {};
  TailSplit split;
  split.whole = [&](double u) {
    if (u == 0.0) return 0.0;
    return (-expm1_i(u * x) / (q - symbol(model, u))).real();
  };
  split.smooth = [&](double u) { return (1.0 / (q - symbol(model, u))).real(); };
  split.oscillatory = [&](double u) {
    return (-std::polar(1.0, u * x) / (q - symbol(model, u))).real();
  };
  auto r = integrate_semi_infinite(split, make_spec(opts, x, 0.0), 2.0 * kPi / std::abs(x));
  return finish(r, 1.0 / kPi);
}

ResolventValue h_q_symmetric_sum(const LevyModel& model, double q, double x,
                                 const ResolventOptions& opts) {
  require_q(q);
  precheck(model, false, opts);
  if (x == 0.0) return {};
  TailSplit split;
  split.whole = [&](double u) {
    const double s = std::sin(0.5 * u * x);
    return (2.0 * s * s / (q - symbol(model, u))).real();
  };
  split.smooth = [&](double u) { return (1.0 / (q - symbol(model, u))).real(); };
  split.oscillatory = [&](double u) {
    return (-std::cos(u * x) / (q - symbol(model, u))).real();
  };
  auto r = integrate_semi_infinite(split, make_spec(opts, x, 0.0), 2.0 * kPi / std::abs(x));
  return finish(r, 2.0 / kPi);
}

ZeroResolventValue renormalized_zero_resolvent(const LevyModel& model, double x,
                                               const ResolventOptions& opts) {
  precheck(model, true, opts);
  ZeroResolventValue out;
  out.x = x;
  if (x == 0.0) return out;
  TailSplit split;
  split.whole = [&](double u) {
    if (u == 0.0) return 0.0;
    const cd eta = symbol(model, u);
    if (eta == cd{}) return 0.0;
    return (expm1_i(u * x) / eta).real();
  };
  split.smooth = [&](double u) { return -(1.0 / symbol(model, u)).real(); };
  split.oscillatory = [&](double u) {
    return (std::polar(1.0, u * x) / symbol(model, u)).real();
  };
  auto r = integrate_semi_infinite(split, make_spec(opts, x, h_head_singularity(model)),
                                   2.0 * kPi / std::abs(x));
  out.h = r.value / kPi;
  out.error_estimate = r.error_estimate / kPi;
  out.converged = r.converged;
  return out;
}

std::vector<double> default_q_grid() { return {1.0, 1e-1, 1e-2, 1e-3, 1e-4}; }

HqScan h_q_convergence_scan(const LevyModel& model, double x, const std::vector<double>& q_grid,
                            const ResolventOptions& opts) {
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    if (!(q_grid[i] < q_grid[i - 1])) throw std::invalid_argument("q grid must be descending");
  }
  precheck(model, true, opts);
  ResolventOptions inner = opts;
  inner.override_conditions = true;
  inner.force = true;
  HqScan scan;
  scan.x = x;
  const auto h = renormalized_zero_resolvent(model, x, inner);
  scan.h = h.h;
  scan.h_error = h.error_estimate;
  for (double q : q_grid) {
    const auto v = h_q(model, q, x, inner);
    scan.rows.push_back({q, v.value, std::abs(v.value - h.h), v.error_estimate});
  }
  const auto& rows = scan.rows;
  std::size_t from = rows.empty() ? 0 : rows.size() - 1;
  while (from > 0 && rows[from].gap < rows[from - 1].gap) --from;
  if (x == 0.0) from = 0;
  scan.decreasing_from = from;
  scan.strictly_decreasing = from == 0;
  scan.eventually_decreasing = rows.size() < 3 || from + 2 < rows.size() || x == 0.0;
  return scan;
}

}  // namespace levy
