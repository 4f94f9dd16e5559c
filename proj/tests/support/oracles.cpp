#include "oracles.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>

namespace oracle {

namespace {

// Midpoint sum in log y over [lo, hi]; the compensator switch at y = 1 and
// the support edge are kept on cell boundaries.
std::complex<double> log_segment(const levy::JumpSide& s, double u, double lo, double hi, double h) {
  const double span = std::log(hi / lo);
  const long n = std::max(1L, static_cast<long>(std::ceil(span / h)));
  const double dl = span / static_cast<double>(n);
  std::complex<double> acc{};
  for (long i = 0; i < n; ++i) {
    const double y = lo * std::exp((static_cast<double>(i) + 0.5) * dl);
    const double k = s.density(y);
    const double z = u * y;
    // cos z - 1 and sin z - z lose everything to cancellation for tiny z.
    const double s2 = std::sin(0.5 * z);
    double im = std::sin(z);
    if (y <= 1.0) im = z < 1e-3 ? -z * z * z / 6.0 * (1.0 - z * z / 20.0) : im - z;
    acc += std::complex<double>(-2.0 * s2 * s2, im) * k * y * dl;
  }
  return acc;
}

std::complex<double> side_sum(const levy::JumpSide& s, double u, double y_max) {
  if (s.empty()) return {};
  constexpr double y_min = 1e-9;
  const double top = std::min(y_max, s.support);
  // Resolve the oscillation at the top of the grid with ~40 points per period.
  const double h = std::min(2e-4, 2.0 * std::numbers::pi / (40.0 * std::max(u, 1e-3) * top));
  std::complex<double> acc = log_segment(s, u, y_min, std::min(1.0, top), h);
  if (top > 1.0) acc += log_segment(s, u, 1.0, top, h);
  // Below y_min: e^{iz} - 1 - iz ~ -z^2/2 with density ~ C y^{-1-s}.
  const double sidx = s.singularity_index;
  const double coef = s.near_zero_coefficient;
  if (coef > 0.0 && sidx < 2.0) {
    acc += -0.5 * u * u * coef * std::pow(y_min, 2.0 - sidx) / (2.0 - sidx);
  }
  return acc;
}

}  // namespace

std::complex<double> brute_symbol(const levy::LevyModel& m, double u, double y_max) {
  const double au = std::abs(u);
  std::complex<double> v(-0.5 * m.a * u * u, m.b * u);
  std::complex<double> j = side_sum(m.plus, au, y_max) + std::conj(side_sum(m.minus, au, y_max));
  if (u < 0) j = std::conj(j);
  return v + j;
}

double brownian_resolvent(double q, double x, double a) {
  return std::exp(-std::sqrt(2.0 * q / a) * std::abs(x)) / std::sqrt(2.0 * q * a);
}

double stable_h(double alpha, double beta, double d, double x) {
  if (x == 0.0) return 0.0;
  const double c_neg = std::tgamma(1.0 - alpha) * std::sin(-std::numbers::pi * alpha / 2.0) / std::numbers::pi;
  const double t = std::tan(std::numbers::pi * alpha / 2.0);
  const double sgn = x > 0 ? 1.0 : -1.0;
  return c_neg * (1.0 - beta * sgn) * std::pow(std::abs(x), alpha - 1.0) / (d * (1.0 + beta * beta * t * t));
}

double brownian_box_occupation_mean(double t, double eps) {
  auto p = [&](double s) {
    if (s <= 0.0) return 1.0 / (2.0 * eps);
    return std::erf(eps / std::sqrt(2.0 * s)) / (2.0 * eps);
  };
  return midpoint(p, 0.0, t, 2'000'000);
}

double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.0;
  for (long i = 0; i < n; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h);
  return acc * h;
}

DriftPath drift_path(double x0, double b, double horizon, int n) {
  DriftPath p;
  p.t.resize(n + 1);
  p.x.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    p.t[i] = horizon * i / n;
    p.x[i] = x0 + b * p.t[i];
  }
  return p;
}

}  // namespace oracle
