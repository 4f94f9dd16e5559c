#include "jump_integral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levy/quadrature.hpp"

namespace levy::detail {
namespace {

using cd = std::complex<double>;

// cos z - 1 without cancellation.
double cos_m1(double z) {
  const double s = std::sin(0.5 * z);
  return -2.0 * s * s;
}

// sin z - z without cancellation.
double sin_m_id(double z) {
  if (std::abs(z) < 0.05) {
    const double z2 = z * z;
    return -z * z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0 * (1.0 - z2 / 72.0)));
  }
  return std::sin(z) - z;
}

// i e^{iua} int_0^inf e^{-us} K(a + is) ds, the vertical leg from a of
// int_a^inf e^{iuy} K(y) dy, with K the continued term density (times iy in
// derivative mode). Substituting s = t/u leaves a smooth e^{-t} integrand.
ComplexQuadratureResult rotated_leg(const PowerLawTerm& term, double u, double a, JumpMode mode,
                                    double tol) {
  auto f = [&](double t) -> cd {
    const cd z(a, t / u);
    cd k = term.c * std::pow(z, -term.alpha - 1.0) * std::exp(-term.lambda * z);
    if (mode == JumpMode::Derivative) k *= cd(0.0, 1.0) * z;
    return k * std::exp(-t) / u;
  };
  auto r = integrate_interval_complex(f, 0.0, 45.0, tol, 1e-12, 200'000, 4);
  r.value *= cd(0.0, 1.0) * std::polar(1.0, u * a);
  return r;
}

}  // namespace

SideIntegral side_integral(const JumpSide& side, double u, JumpMode mode, double abs_tol) {
  SideIntegral out;
  if (side.empty() || u == 0.0) return out;
  const double R = side.support;
  const double y_cap = side.tail_rate > 0.0 ? std::max(1.0, 1.0 + 60.0 / side.tail_rate) : kInf;
  const double r_eff = std::min(R, y_cap);
  const double y1 = std::min(std::numbers::pi / u, r_eff);
  const double piece_tol = abs_tol / 4.0;
  constexpr double kRel = 1e-11;

  auto absorb = [&](const ComplexQuadratureResult& r) {
    out.value += r.value;
    out.error += r.error_estimate;
    out.converged = out.converged && r.converged;
  };

  // Head (0, min(1, y1)] with the compensated integrand, graded toward 0.
  const double ya = std::min(1.0, y1);
  {
    const double s = side.singularity_index;
    const double p = s > 1.0 ? 1.0 / (2.0 - s) : 1.0;
    auto f = [&](double t) -> cd {
      if (t <= 0.0) return {};
      const double y = ya * std::pow(t, p);
      const double jac = p * ya * std::pow(t, p - 1.0);
      const double k = side.density(y) * jac;
      const double z = u * y;
      if (mode == JumpMode::Symbol) return {cos_m1(z) * k, sin_m_id(z) * k};
      return {-y * std::sin(z) * k, y * cos_m1(z) * k};
    };
    absorb(integrate_interval_complex(f, 0.0, 1.0, piece_tol, kRel, 400'000, 4));
  }

  // (1, y1]: no compensator, still less than half an oscillation.
  if (y1 > 1.0) {
    auto f = [&](double t) -> cd {
      const double y = std::exp(t);
      const double k = side.density(y) * y;
      const double z = u * y;
      if (mode == JumpMode::Symbol) return {cos_m1(z) * k, std::sin(z) * k};
      return {-y * std::sin(z) * k, y * std::cos(z) * k};
    };
    const double b = std::log(y1);
    const int cells = std::max(1, static_cast<int>(std::ceil(b)));
    absorb(integrate_interval_complex(f, 0.0, b, piece_tol, kRel, 400'000, cells));
  }

  // Oscillatory remainder (y1, R]. Power-law terms continue analytically into
  // Re z > 0, so the path y -> y + i s turns e^{iuy} into e^{-us}. Density
  // handles go through Levin.
  const bool rotate = !side.handle;
  const double R_tail = rotate ? R : r_eff;
  if (y1 < R_tail) {
    if (rotate) {
      for (const auto& t : side.terms) {
        if (t.c == 0.0 || !(t.support > y1)) continue;
        absorb(rotated_leg(t, u, y1, mode, piece_tol));
        if (std::isfinite(t.support)) {
          auto r = rotated_leg(t, u, t.support, mode, piece_tol);
          r.value = -r.value;
          absorb(r);
        }
      }
    } else {
      ComplexFunction g;
      if (mode == JumpMode::Symbol) {
        g = [&](double y) { return cd(side.density(y), 0.0); };
      } else {
        g = [&](double y) { return cd(0.0, y * side.density(y)); };
      }
      absorb(integrate_fourier(g, u, y1, R_tail, piece_tol, kRel));
    }
    const double top = std::min(1.0, R_tail);
    const double m1 = y1 < top ? side.moment(1.0, y1, top) : 0.0;
    if (mode == JumpMode::Symbol) {
      const double m0 = side.moment(0.0, y1, R_tail);
      out.value += cd(-m0, -u * m1);
    } else {
      out.value += cd(0.0, -m1);
    }
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    out.converged = false;
  }
  return out;
}

}  // namespace levy::detail
