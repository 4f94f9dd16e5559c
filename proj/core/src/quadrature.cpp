#include "levy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace levy {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

double magnitude(double v) { return std::abs(v); }
double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T>
struct RuleOutput {
  T value{};
  double error = 0.0;
};

// QUADPACK-style 21-point Kronrod rule with the embedded 10-point Gauss rule.
// Nodes come from Boost's tables; the Gauss nodes sit at odd Kronrod indices.
template <class T, class F>
RuleOutput<T> kronrod21(F& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const auto& xk = gauss_kronrod<double, 21>::abscissa();
  static const auto& wk = gauss_kronrod<double, 21>::weights();
  static const auto& wg = gauss<double, 10>::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 21> fv;
  fv[0] = f(center);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double dx = half * xk[j];
    fv[2 * j - 1] = f(center - dx);
    fv[2 * j] = f(center + dx);
  }

  T resk = wk[0] * fv[0];
  T resg{};
  double resabs = wk[0] * magnitude(fv[0]);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const T pair = fv[2 * j - 1] + fv[2 * j];
    resk += wk[j] * pair;
    resabs += wk[j] * (magnitude(fv[2 * j - 1]) + magnitude(fv[2 * j]));
    if (j % 2 == 1) resg += wg[j / 2] * pair;
  }
  const T mean = resk * 0.5;
  double resasc = wk[0] * magnitude(fv[0] - mean);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    resasc += wk[j] * (magnitude(fv[2 * j - 1] - mean) + magnitude(fv[2 * j] - mean));
  }

  const double abs_half = std::abs(half);
  resabs *= abs_half;
  resasc *= abs_half;
  double err = magnitude((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {resk * half, err};
}

template <class T>
struct AdaptiveOutput {
  T value{};
  double error = 0.0;
  bool converged = true;
  long evals = 0;
};

template <class T, class F>
AdaptiveOutput<T> adaptive(F& f, double a, double b, double abs_tol,
                           double rel_tol, long max_evals, int cells) {
  struct Piece {
    double a, b;
    T value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  AdaptiveOutput<T> out;
  if (a == b) return out;
  cells = std::max(cells, 1);
  std::priority_queue<Piece> heap;
  T total{};
  double total_err = 0.0;
  double frozen_err = 0.0;
  T frozen{};
  const double width = (b - a) / cells;
  for (int c = 0; c < cells; ++c) {
    const double lo = a + c * width;
    const double hi = (c + 1 == cells) ? b : a + (c + 1) * width;
    auto r = kronrod21<T>(f, lo, hi);
    out.evals += 21;
    total += r.value;
    total_err += r.error;
    heap.push({lo, hi, r.value, r.error});
  }
  const double min_width = 64.0 * kEps * std::max(std::abs(a), std::abs(b));
  while (!heap.empty()) {
    const double tol = std::max(abs_tol, rel_tol * magnitude(total));
    if (total_err <= tol) break;
    if (out.evals + 42 > max_evals) {
      out.converged = false;
      break;
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
      // Cannot split further; keep its contribution and its error.
      frozen += worst.value;
      frozen_err += worst.error;
      total_err -= worst.error;
      total_err += worst.error;  // still counted in the estimate
      if (heap.empty()) break;
      continue;
    }
    auto left = kronrod21<T>(f, worst.a, mid);
    auto right = kronrod21<T>(f, mid, worst.b);
    out.evals += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  T sum = frozen;
  double err = frozen_err;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  if (out.converged) {
    out.converged = err <= std::max(abs_tol, rel_tol * magnitude(sum)) * (1.0 + 1e-12);
  }
  return out;
}

QuadratureResult to_result(const AdaptiveOutput<double>& a) {
  QuadratureResult r;
  r.value = a.value;
  r.error_estimate = a.error;
  r.converged = a.converged;
  r.function_evals = a.evals;
  return r;
}

// Wynn's epsilon algorithm on a window of partial sums; returns the deepest
// even-column entry that could be formed without a vanishing denominator.
double wynn_epsilon(const std::vector<double>& sums) {
  const std::size_t n = sums.size();
  if (n < 3) return sums.back();
  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(sums);
  double best = sums.back();
  for (std::size_t col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      const double scale = std::max(std::abs(cur[i + 1]), std::abs(cur[i]));
      if (std::abs(d) <= 4.0 * kEps * scale || d == 0.0) return best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) {
      if (!std::isfinite(cur.back())) return best;
      best = cur.back();
    }
  }
  return best;
}

double graded_exponent(double singularity) {
  if (singularity < 0.0) return std::min(1.0 / (1.0 + singularity), 12.0);
  return 1.0;
}

QuadratureResult integrate_head(const RealFunction& f, const QuadratureSpec& spec,
                                double abs_tol) {
  const double u1 = spec.split_point;
  const double p = graded_exponent(spec.head_singularity);
  auto g = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double u = u1 * std::pow(t, p);
    return f(u) * p * u1 * std::pow(t, p - 1.0);
  };
  auto out = adaptive<double>(g, 0.0, 1.0, abs_tol, spec.rel_tol,
                              spec.max_evals / 2, 8);
  return to_result(out);
}

QuadratureResult oscillatory_tail(const RealFunction& f, const QuadratureSpec& spec,
                                  double period, double abs_tol) {
  QuadratureResult res;
  const double u1 = spec.split_point;
  const double half = 0.5 * period;
  const int max_panels = 2 * spec.max_tail_periods;
  std::vector<double> sums;
  sums.reserve(max_panels);
  double running = 0.0;
  double panel_err = 0.0;
  double last_extrap = 0.0;
  double last_diff = std::numeric_limits<double>::infinity();
  int small_terms = 0;
  for (int k = 0; k < max_panels; ++k) {
    const double lo = u1 + k * half;
    auto p = adaptive<double>(f, lo, lo + half, abs_tol / 64.0, spec.rel_tol,
                              200'000, 1);
    res.function_evals += p.evals;
    panel_err += p.error;
    running += p.value;
    sums.push_back(running);

    if (std::abs(p.value) < abs_tol / 100.0) {
      if (++small_terms >= 3) {
        res.value = running;
        res.tail_truncation_bound = std::abs(p.value);
        res.error_estimate = panel_err + res.tail_truncation_bound;
        return res;
      }
    } else {
      small_terms = 0;
    }

    if (spec.acceleration == Acceleration::None) {
      // Alternating remainder bound: next term is no larger than this one.
      if (std::abs(p.value) < abs_tol / 10.0 && k > 0) {
        res.value = running;
        res.tail_truncation_bound = std::abs(p.value);
        res.error_estimate = panel_err + res.tail_truncation_bound;
        return res;
      }
      continue;
    }

    if (sums.size() < 4) continue;
    const std::size_t window = std::min<std::size_t>(sums.size(), 32);
    std::vector<double> tail_sums(sums.end() - static_cast<long>(window), sums.end());
    const double extrap = wynn_epsilon(tail_sums);
    const double diff = std::abs(extrap - last_extrap);
    if (k >= 5 && diff < abs_tol / 10.0 && last_diff < abs_tol / 10.0) {
      res.value = extrap;
      res.tail_truncation_bound = diff + last_diff;
      res.error_estimate = panel_err + res.tail_truncation_bound;
      return res;
    }
    last_diff = diff;
    last_extrap = extrap;
  }
  res.value = spec.acceleration == Acceleration::None ? running : last_extrap;
  res.tail_truncation_bound = spec.acceleration == Acceleration::None
                                  ? std::abs(sums.back() - sums[sums.size() - 2])
                                  : last_diff;
  res.error_estimate = panel_err + res.tail_truncation_bound;
  res.converged = false;
  return res;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (!(split_point > 0.0) || !std::isfinite(split_point)) {
    throw std::invalid_argument("QuadratureSpec: split_point must be positive and finite");
  }
  if (max_tail_periods < 1) {
    throw std::invalid_argument("QuadratureSpec: max_tail_periods must be >= 1");
  }
  if (!(head_singularity > -1.0)) {
    throw std::invalid_argument("QuadratureSpec: head singularity must exceed -1");
  }
}

double QuadratureSpec::tolerance_for(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& o) {
  value += o.value;
  error_estimate += o.error_estimate;
  tail_truncation_bound += o.tail_truncation_bound;
  converged = converged && o.converged;
  function_evals += o.function_evals;
  return *this;
}

QuadratureResult& QuadratureResult::operator-=(const QuadratureResult& o) {
  value -= o.value;
  error_estimate += o.error_estimate;
  tail_truncation_bound += o.tail_truncation_bound;
  converged = converged && o.converged;
  function_evals += o.function_evals;
  return *this;
}

ComplexQuadratureResult& ComplexQuadratureResult::operator+=(
    const ComplexQuadratureResult& o) {
  value += o.value;
  error_estimate += o.error_estimate;
  converged = converged && o.converged;
  function_evals += o.function_evals;
  return *this;
}

QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    double abs_tol, double rel_tol, long max_evals,
                                    int initial_cells) {
  auto out = adaptive<double>(f, a, b, abs_tol, rel_tol, max_evals, initial_cells);
  return to_result(out);
}

ComplexQuadratureResult integrate_interval_complex(const ComplexFunction& f, double a,
                                           double b, double abs_tol,
                                           double rel_tol, long max_evals,
                                           int initial_cells) {
  auto out = adaptive<std::complex<double>>(f, a, b, abs_tol, rel_tol, max_evals,
                                            initial_cells);
  ComplexQuadratureResult r;
  r.value = out.value;
  r.error_estimate = out.error;
  r.converged = out.converged;
  r.function_evals = out.evals;
  return r;
}

QuadratureResult integrate_smooth_tail(const RealFunction& f, double a,
                                       double abs_tol, double rel_tol,
                                       long max_evals) {
  QuadratureResult res;
  auto g = [&](double v) {
    const double u = a * std::exp(v);
    return f(u) * u;
  };
  constexpr int kMaxPanels = 700;
  std::vector<double> panels;
  double sum = 0.0;
  double err = 0.0;
  for (int j = 0; j < kMaxPanels; ++j) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(sum));
    auto p = adaptive<double>(g, j, j + 1.0, tol / 64.0, rel_tol, 100'000, 1);
    res.function_evals += p.evals;
    sum += p.value;
    err += p.error;
    panels.push_back(p.value);
    if (!std::isfinite(sum)) break;

    const std::size_t n = panels.size();
    if (n >= 3 && panels[n - 1] == 0.0 && panels[n - 2] == 0.0) {
      res.value = sum;
      res.error_estimate = err;
      return res;
    }
    if (n < 6) continue;
    const double p0 = panels[n - 3], p1 = panels[n - 2], p2 = panels[n - 1];
    if (p0 == 0.0 || p1 == 0.0) continue;
    const double r1 = p1 / p0;
    const double r2 = p2 / p1;
    if (!(r2 > 0.0 && r2 < 0.999 && r1 > 0.0 && r1 < 0.999)) {
      if (std::abs(p2) < tol * 1e-3 && std::abs(p1) < tol * 1e-3) {
        res.value = sum;
        res.error_estimate = err + std::abs(p2);
        res.tail_truncation_bound = std::abs(p2);
        return res;
      }
      continue;
    }
    // Geometric remainder of the panel sequence (exact for power laws).
    const double remainder = p2 * r2 / (1.0 - r2);
    const double model_err =
        std::abs(remainder) * std::min(1.0, 10.0 * std::abs(r2 - r1) / (1.0 - r2));
    if (model_err < tol / 4.0) {
      res.value = sum + remainder;
      res.tail_truncation_bound = std::abs(remainder);
      res.error_estimate = err + model_err;
      return res;
    }
    if (res.function_evals > max_evals) break;
  }
  res.value = sum;
  res.error_estimate = err + (panels.empty() ? 0.0 : std::abs(panels.back()));
  res.tail_truncation_bound = panels.empty() ? 0.0 : std::abs(panels.back());
  res.converged = false;
  return res;
}

QuadratureResult integrate_semi_infinite(const RealFunction& f,
                                         const QuadratureSpec& spec,
                                         std::optional<double> period) {
  spec.validate();
  if (period && !(*period > 0.0 && std::isfinite(*period))) {
    throw std::invalid_argument("integrate_semi_infinite: period must be positive");
  }
  QuadratureResult head = integrate_head(f, spec, spec.abs_tol / 2.0);
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value));
  QuadratureResult tail =
      period ? oscillatory_tail(f, spec, *period, tol / 2.0)
             : integrate_smooth_tail(f, spec.split_point, tol / 2.0, spec.rel_tol,
                                     spec.max_evals / 2);
  QuadratureResult total = head;
  total += tail;
  total.tail_truncation_bound = tail.tail_truncation_bound;
  total.converged = head.converged && tail.converged &&
                    total.error_estimate <= 2.0 * spec.tolerance_for(total.value);
  return total;
}

QuadratureResult integrate_semi_infinite(const TailSplit& f,
                                         const QuadratureSpec& spec,
                                         double period) {
  spec.validate();
  if (!(period > 0.0 && std::isfinite(period))) {
    throw std::invalid_argument("integrate_semi_infinite: period must be positive");
  }
  QuadratureResult head = integrate_head(f.whole, spec, spec.abs_tol / 3.0);
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value));
  QuadratureResult smooth = integrate_smooth_tail(
      f.smooth, spec.split_point, tol / 3.0, spec.rel_tol, spec.max_evals / 3);
  QuadratureResult osc = oscillatory_tail(f.oscillatory, spec, period, tol / 3.0);
  QuadratureResult total = head;
  total += smooth;
  total += osc;
  total.tail_truncation_bound = smooth.tail_truncation_bound + osc.tail_truncation_bound;
  total.converged = head.converged && smooth.converged && osc.converged &&
                    total.error_estimate <= 2.0 * spec.tolerance_for(total.value);
  return total;
}

namespace {

struct ChebyshevLevin {
  int n;
  Eigen::VectorXd nodes;  // on [-1, 1], descending
  Eigen::MatrixXd diff;

  explicit ChebyshevLevin(int order) : n(order), nodes(order + 1), diff(order + 1, order + 1) {
    for (int j = 0; j <= n; ++j) nodes[j] = std::cos(std::numbers::pi * j / n);
    for (int i = 0; i <= n; ++i) {
      const double ci = (i == 0 || i == n) ? 2.0 : 1.0;
      double row = 0.0;
      for (int j = 0; j <= n; ++j) {
        if (i == j) continue;
        const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        diff(i, j) = ci / cj * sign / (nodes[i] - nodes[j]);
        row += diff(i, j);
      }
      diff(i, i) = -row;
    }
  }

  // Solves p' + i w p = g on [a, b] by collocation; returns the integral
  // p(b) e^{iwb} - p(a) e^{iwa}.
  std::complex<double> integrate(const ComplexFunction& g, double omega, double a,
                                 double b) const {
    using cd = std::complex<double>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Eigen::MatrixXcd lhs = diff.cast<cd>() / half;
    Eigen::VectorXcd rhs(n + 1);
    for (int j = 0; j <= n; ++j) {
      lhs(j, j) += cd(0.0, omega);
      rhs[j] = g(mid + half * nodes[j]);
    }
    Eigen::VectorXcd p = lhs.colPivHouseholderQr().solve(rhs);
    // nodes[0] = +1 -> b, nodes[n] = -1 -> a
    return p[0] * std::polar(1.0, omega * b) - p[n] * std::polar(1.0, omega * a);
  }
};

ComplexQuadratureResult levin_panel(const ComplexFunction& g, double omega, double a,
                                    double b, double tol, int depth) {
  static const ChebyshevLevin coarse(14);
  static const ChebyshevLevin fine(22);
  ComplexQuadratureResult r;
  const auto c = omega * (b - a) < 2.0 * std::numbers::pi ? std::complex<double>(NAN, NAN)
                                                          : coarse.integrate(g, omega, a, b);
  const auto f = std::isfinite(c.real()) ? fine.integrate(g, omega, a, b) : c;
  if (!std::isfinite(std::abs(f - c))) {
    auto h = [&](double y) { return g(y) * std::polar(1.0, omega * y); };
    auto out = adaptive<std::complex<double>>(h, a, b, tol, 1e-13, 100'000, 1);
    r.value = out.value;
    r.error_estimate = out.error;
    r.converged = out.converged;
    r.function_evals = out.evals;
    return r;
  }
  r.function_evals = coarse.n + fine.n + 2;
  const double err = std::abs(f - c);
  if (err <= tol || depth >= 14) {
    r.value = f;
    r.error_estimate = err;
    r.converged = err <= tol;
    return r;
  }
  const double mid = 0.5 * (a + b);
  r = levin_panel(g, omega, a, mid, tol / 2.0, depth + 1);
  r += levin_panel(g, omega, mid, b, tol / 2.0, depth + 1);
  return r;
}

}  // namespace

ComplexQuadratureResult integrate_fourier(const ComplexFunction& g, double omega,
                                          double a, double b, double abs_tol,
                                          double rel_tol) {
  if (!(omega > 0.0)) throw std::invalid_argument("integrate_fourier: omega must be positive");
  if (!(b > a)) return {};
  ComplexQuadratureResult total;
  double lo = a;
  if (lo <= 0.0) {
    const double hi = std::min(b, 2.0 * std::numbers::pi / omega);
    total += levin_panel(g, omega, lo, hi, abs_tol / 16.0, 0);
    lo = hi;
  }
  for (int k = 0; lo < b && k < 2000; ++k) {
    const double hi = std::min(b, 2.0 * lo);
    const double tol = std::max(abs_tol, rel_tol * std::abs(total.value)) / 16.0;
    total += levin_panel(g, omega, lo, hi, tol, 0);
    lo = hi;
    if (std::isinf(b)) {
      const double envelope = 2.0 * std::abs(g(lo)) / omega;
      if (envelope < std::max(abs_tol, rel_tol * std::abs(total.value)) / 4.0) {
        total.error_estimate += envelope;
        return total;
      }
    }
  }
  if (lo < b) total.converged = false;
  return total;
}

namespace {

struct NestedProbe {
  std::vector<TrendPoint> trend;
  Integrability verdict = Integrability::Inconclusive;
  double estimate = 0.0;
};

// Classifies the trend of nonnegative increments; returns Inconclusive while
// the evidence is still ambiguous.
Integrability classify(const std::vector<TrendPoint>& t, bool final_level, double& extrap) {
  const std::size_t n = t.size();
  extrap = 0.0;
  if (n < 4) return Integrability::Inconclusive;
  const double total = t.back().partial_integral;
  bool all_zero = true;
  for (const auto& p : t) all_zero = all_zero && p.increment == 0.0;
  if (all_zero && n >= 6) return Integrability::Finite;
  const double last = t[n - 1].increment;
  if (last <= 1e-15 * total && t[n - 2].increment <= 1e-15 * total) {
    return Integrability::Finite;
  }
  const std::size_t window = std::min<std::size_t>(n - 1, 6);
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = n - window; i < n; ++i) {
    const double prev = t[i - 1].increment;
    const double r = prev > 0.0 ? t[i].increment / prev : std::numeric_limits<double>::infinity();
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (rmax <= 0.9) {
    const double r = t[n - 1].increment / t[n - 2].increment;
    extrap = last * r / (1.0 - r);
    const double r_prev = t[n - 2].increment / t[n - 3].increment;
    const bool stable = std::abs(r - r_prev) < 1e-6;
    if (final_level || stable || extrap < 1e-9 * total) return Integrability::Finite;
    return Integrability::Inconclusive;
  }
  if (rmin >= 1.2 && n >= 8) return Integrability::Diverging;
  if (rmin >= 0.97 && (n >= 12 || final_level)) return Integrability::Diverging;
  return Integrability::Inconclusive;
}

NestedProbe probe_toward_left(const RealFunction& f, double lo, double hi, int budget) {
  // Nested [lo + (hi-lo) 2^-k, hi].
  NestedProbe out;
  auto absf = [&](double u) { return std::abs(f(u)); };
  double partial = 0.0;
  const double span = hi - lo;
  for (int k = 1; k <= budget; ++k) {
    const double a = lo + span * std::ldexp(1.0, -k);
    const double b = lo + span * std::ldexp(1.0, -k + 1);
    auto r = adaptive<double>(absf, a, b, 1e-300, 1e-7, 20'000, 1);
    partial += r.value;
    out.trend.push_back({a, hi, partial, r.value});
    double extrap = 0.0;
    const auto v = classify(out.trend, k == budget, extrap);
    if (v != Integrability::Inconclusive || k == budget) {
      out.verdict = v;
      out.estimate = partial + extrap;
      return out;
    }
  }
  out.estimate = partial;
  return out;
}

NestedProbe probe_toward_right(const RealFunction& f, double lo, int budget) {
  // Nested [lo, lo + 2^k] with lo finite.
  NestedProbe out;
  auto absf = [&](double u) { return std::abs(f(u)); };
  double partial = 0.0;
  for (int k = 0; k < budget; ++k) {
    const double a = lo + (k == 0 ? 0.0 : std::ldexp(1.0, k - 1));
    const double b = lo + std::ldexp(1.0, k);
    auto r = adaptive<double>(absf, a, b, 1e-300, 1e-7, 8'000, 4);
    partial += r.value;
    out.trend.push_back({lo, b, partial, r.value});
    double extrap = 0.0;
    const auto v = classify(out.trend, k + 1 == budget, extrap);
    if (v != Integrability::Inconclusive || k + 1 == budget) {
      out.verdict = v;
      out.estimate = partial + extrap;
      return out;
    }
  }
  out.estimate = partial;
  return out;
}

}  // namespace

ProbeResult integrability_probe(const RealFunction& f, Interval domain, int budget) {
  if (!(domain.hi > domain.lo) || !std::isfinite(domain.lo)) {
    throw std::invalid_argument("integrability_probe: need lo finite and hi > lo");
  }
  budget = std::max(budget, 8);
  ProbeResult res;
  if (std::isfinite(domain.hi)) {
    auto p = probe_toward_left(f, domain.lo, domain.hi, budget);
    res.verdict = p.verdict;
    res.finite_estimate = p.estimate;
    res.evidence = std::move(p.trend);
    res.note = "nested toward lower endpoint";
    return res;
  }
  const double mid = domain.lo + 1.0;
  auto head = probe_toward_left(f, domain.lo, mid, budget);
  NestedProbe tail;
  if (head.verdict != Integrability::Diverging) tail = probe_toward_right(f, mid, budget);
  res.evidence = head.trend;
  res.evidence.insert(res.evidence.end(), tail.trend.begin(), tail.trend.end());
  res.finite_estimate = head.estimate + tail.estimate;
  if (head.verdict == Integrability::Diverging || tail.verdict == Integrability::Diverging) {
    res.verdict = Integrability::Diverging;
  } else if (head.verdict == Integrability::Finite && tail.verdict == Integrability::Finite) {
    res.verdict = Integrability::Finite;
  } else {
    res.verdict = Integrability::Inconclusive;
  }
  res.note = "head nested toward lower endpoint: " + to_string(head.verdict) +
             "; tail doubling toward infinity: " + to_string(tail.verdict);
  return res;
}

std::string to_string(Integrability v) {
  switch (v) {
    case Integrability::Finite: return "finite";
    case Integrability::Diverging: return "diverging";
    case Integrability::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace levy
