#pragma once

#include <span>
#include <vector>

#include "levy/pathsim.hpp"

namespace levy {

struct OccupationEstimate {
  double x = 0.0;
  double t = 0.0;
  double eps = 0.0;
  /// (1/2eps) * time spent in (x - eps, x + eps) up to t, left Riemann sum.
  double value = 0.0;
  long n_hits = 0;
};

/// Left Riemann sum of (1/2eps) int_{t0}^{t1} 1{|X_s - x| < eps} ds on the
/// path grid. Grid cell i contributes its overlap with [t0, t1] whenever
/// |X_{t_i} - x| < eps.
OccupationEstimate occupation_between(std::span<const double> t_grid,
                                      std::span<const double> states, double x, double t0,
                                      double t1, double eps);

OccupationEstimate occupation_local_time(std::span<const double> t_grid,
                                         std::span<const double> states, double x, double t,
                                         double eps);
OccupationEstimate occupation_local_time(const PathSample& path, double x, double t, double eps);

struct DiscountedLocalTime {
  double value = 0.0;
  /// e^{-qT} (L_T / T) / q: the remainder if local time kept accruing at
  /// its average rate beyond the horizon.
  double truncation_bound = 0.0;
};

/// Stieltjes sum sum_i e^{-q t_i} dL_i of the occupation estimate.
DiscountedLocalTime discounted_local_time(std::span<const double> t_grid,
                                          std::span<const double> states, double x, double q,
                                          double eps);
DiscountedLocalTime discounted_local_time(const PathSample& path, double x, double q, double eps);

/// eps = max(dt^0.4, 10 * median |increment|) / 2.
double default_epsilon(double dt, std::span<const double> states);
double default_epsilon(const PathSample& path);

}  // namespace levy
