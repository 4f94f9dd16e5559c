#pragma once

#include <functional>
#include <vector>

namespace levy {

/// Fritsch-Carlson monotone piecewise cubic Hermite interpolant with its exact
/// antiderivative. Outside [front, back] the end values are held constant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double z) const;
  /// int_{x_0}^{z} p(s) ds.
  double antiderivative(double z) const;
  /// (1/2eps) int_{z-eps}^{z+eps} p(s) ds.
  double box_average(double z, double eps) const;

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::size_t cell(double z) const;
  std::vector<double> x_, y_, m_, cum_;
};

/// n nodes on [lo, hi] with x = center + scale * sinh(s), s uniform, so the
/// spacing is about scale * ds near the center and grows geometrically.
std::vector<double> sinh_graded_nodes(double center, double lo, double hi, double scale, int n);

struct GridBuildOptions {
  int nodes = 2048;
  double scale = 0.01;
  unsigned workers = 0;
};

/// Tabulates f on sinh-graded nodes (evaluated in parallel) and returns the
/// interpolant.
MonotoneCubic tabulate(const std::function<double(double)>& f, double center, double lo, double hi,
                       const GridBuildOptions& opts);

}  // namespace levy
