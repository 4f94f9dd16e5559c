#pragma once

#include <complex>

#include "levy/levy_model.hpp"

namespace levy::detail {

enum class JumpMode {
  /// int (e^{iuy} - 1 - iuy 1{y<=1}) k(y) dy
  Symbol,
  /// int iy (e^{iuy} - 1{y<=1}) k(y) dy, the u-derivative of the above
  Derivative,
};

struct SideIntegral {
  std::complex<double> value{};
  double error = 0.0;
  bool converged = true;
};

/// One-sided jump integral for u > 0 over the positive half-line density of
/// `side`.
SideIntegral side_integral(const JumpSide& side, double u, JumpMode mode, double abs_tol);

}  // namespace levy::detail
