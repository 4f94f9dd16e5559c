#include "levy/localtime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levy {
namespace {

void check(std::span<const double> t_grid, std::span<const double> states, double eps) {
  if (t_grid.size() != states.size() || t_grid.size() < 2) {
    throw std::invalid_argument("time grid and states must have equal length >= 2");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

}  // namespace

OccupationEstimate occupation_between(std::span<const double> t_grid,
                                      std::span<const double> states, double x, double t0,
                                      double t1, double eps) {
  check(t_grid, states, eps);
  if (t1 > t_grid.back() * (1.0 + 1e-12)) throw std::invalid_argument("t exceeds the path horizon");
  OccupationEstimate e;
  e.x = x;
  e.t = t1;
  e.eps = eps;
  double time = 0.0;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double lo = std::max(t_grid[i], t0);
    const double hi = std::min(t_grid[i + 1], t1);
    if (hi <= lo) {
      if (t_grid[i] >= t1) break;
      continue;
    }
    if (std::abs(states[i] - x) < eps) {
      time += hi - lo;
      ++e.n_hits;
    }
  }
  e.value = time / (2.0 * eps);
  return e;
}

OccupationEstimate occupation_local_time(std::span<const double> t_grid,
                                         std::span<const double> states, double x, double t,
                                         double eps) {
  return occupation_between(t_grid, states, x, t_grid.front(), t, eps);
}

OccupationEstimate occupation_local_time(const PathSample& path, double x, double t, double eps) {
  return occupation_local_time(path.t_grid, path.states, x, t, eps);
}

DiscountedLocalTime discounted_local_time(std::span<const double> t_grid,
                                          std::span<const double> states, double x, double q,
                                          double eps) {
  check(t_grid, states, eps);
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  DiscountedLocalTime d;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (std::abs(states[i] - x) < eps) {
      const double dl = (t_grid[i + 1] - t_grid[i]) / (2.0 * eps);
      d.value += std::exp(-q * t_grid[i]) * dl;
      total += dl;
    }
  }
  const double horizon = t_grid.back() - t_grid.front();
  d.truncation_bound = std::exp(-q * t_grid.back()) * (total / horizon) / q;
  return d;
}

DiscountedLocalTime discounted_local_time(const PathSample& path, double x, double q, double eps) {
  return discounted_local_time(path.t_grid, path.states, x, q, eps);
}

double default_epsilon(double dt, std::span<const double> states) {
  if (states.size() < 2) throw std::invalid_argument("need at least one increment");
  std::vector<double> inc(states.size() - 1);
  for (std::size_t i = 0; i + 1 < states.size(); ++i) inc[i] = std::abs(states[i + 1] - states[i]);
  auto mid = inc.begin() + static_cast<long>(inc.size() / 2);
  std::nth_element(inc.begin(), mid, inc.end());
  return std::max(std::pow(dt, 0.4), 10.0 * *mid) / 2.0;
}

double default_epsilon(const PathSample& path) {
  return default_epsilon(path.t_grid[1] - path.t_grid[0], path.states);
}

}  // namespace levy
