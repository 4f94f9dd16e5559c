#include "levy/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levy/parallel.hpp"

namespace levy {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 matching nodes");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: nodes must increase");
  }
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_.assign(n, 0.0);
  m_[0] = delta[0];
  m_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    m_[i] = delta[i - 1] * delta[i] <= 0.0 ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / delta[i];
    const double b = m_[i + 1] / delta[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m_[i] = tau * a * delta[i];
      m_[i + 1] = tau * b * delta[i];
    }
  }
  cum_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    // Exact integral of the Hermite cubic over a full cell.
    cum_[i + 1] = cum_[i] + h * (0.5 * (y_[i] + y_[i + 1]) + h * (m_[i] - m_[i + 1]) / 12.0);
  }
}

std::size_t MonotoneCubic::cell(double z) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), z);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double z) const {
  if (z <= x_.front()) return y_.front();
  if (z >= x_.back()) return y_.back();
  const std::size_t i = cell(z);
  const double h = x_[i + 1] - x_[i];
  const double t = (z - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * m_[i] +
         (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * m_[i + 1];
}

double MonotoneCubic::antiderivative(double z) const {
  if (z <= x_.front()) return (z - x_.front()) * y_.front();
  if (z >= x_.back()) return cum_.back() + (z - x_.back()) * y_.back();
  const std::size_t i = cell(z);
  const double h = x_[i + 1] - x_[i];
  const double s = (z - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
  const double i00 = s - s3 + 0.5 * s4;
  const double i10 = 0.5 * s2 - 2.0 * s3 / 3.0 + 0.25 * s4;
  const double i01 = s3 - 0.5 * s4;
  const double i11 = -s3 / 3.0 + 0.25 * s4;
  return cum_[i] + h * (i00 * y_[i] + i10 * h * m_[i] + i01 * y_[i + 1] + i11 * h * m_[i + 1]);
}

double MonotoneCubic::box_average(double z, double eps) const {
  return (antiderivative(z + eps) - antiderivative(z - eps)) / (2.0 * eps);
}

std::vector<double> sinh_graded_nodes(double center, double lo, double hi, double scale, int n) {
  if (!(hi > lo) || n < 2 || !(scale > 0.0)) throw std::invalid_argument("sinh_graded_nodes: bad range");
  const double s0 = std::asinh((lo - center) / scale);
  const double s1 = std::asinh((hi - center) / scale);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    const double s = s0 + (s1 - s0) * i / (n - 1);
    x[i] = center + scale * std::sinh(s);
  }
  x.front() = lo;
  x.back() = hi;
  return x;
}

MonotoneCubic tabulate(const std::function<double(double)>& f, double center, double lo, double hi,
                       const GridBuildOptions& opts) {
  auto x = sinh_graded_nodes(center, lo, hi, opts.scale, opts.nodes);
  std::vector<double> y(x.size());
  parallel_for(x.size(), [&](std::size_t i, unsigned) { y[i] = f(x[i]); }, opts.workers);
  return MonotoneCubic(std::move(x), std::move(y));
}

}  // namespace levy
