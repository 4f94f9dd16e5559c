#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>

#include "levy/quadrature.hpp"
#include "oracles.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

// (1 - cos u)/u^2 on [0, inf): midpoint sum to U plus int_U^inf du/u^2 = 1/U,
// the cosine part of the tail being O(1/U^2).
double one_minus_cos_oracle() {
  constexpr double U = 4000.0;
  auto f = [](double u) { const double s = std::sin(0.5 * u); return 2.0 * s * s / (u * u); };
  return oracle::midpoint(f, 0.0, U, 8'000'000) + 1.0 / U;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("rational integrand on the half line") {
  auto r = integrate_semi_infinite([](double u) { return 1.0 / (1.0 + u * u); }, QuadratureSpec{});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(pi / 2).epsilon(1e-9));
  CHECK(std::abs(r.value - pi / 2) <= 10.0 * r.error_estimate + 1e-12);
}

TEST_CASE("exponential integrand") {
  auto r = integrate_semi_infinite([](double u) { return std::exp(-u); }, QuadratureSpec{});
  CHECK(std::abs(r.value - 1.0) < 1e-10);
}

TEST_CASE("slowly decaying oscillatory integrand with a declared period") {
  const double ref = one_minus_cos_oracle();
  REQUIRE(ref == doctest::Approx(pi / 2).epsilon(1e-6));
  auto f = [](double u) {
    if (u == 0.0) return 0.5;
    const double s = std::sin(0.5 * u);
    return 2.0 * s * s / (u * u);
  };
  // The tail 1/u^2 - cos(u)/u^2 does not alternate, so it is split.
  TailSplit ts;
  ts.whole = f;
  ts.smooth = [](double u) { return 1.0 / (u * u); };
  ts.oscillatory = [](double u) { return -std::cos(u) / (u * u); };
  auto r = integrate_semi_infinite(ts, QuadratureSpec{}, 2.0 * pi);
  CHECK(r.converged);
  CHECK(std::abs(r.value - ref) < 1e-6);
  CHECK(std::abs(r.value - pi / 2) < 1e-8);
  // Treated as one alternating tail the result must at least be flagged.
  auto plain = integrate_semi_infinite(f, QuadratureSpec{}, 2.0 * pi);
  CHECK((!plain.converged || std::abs(plain.value - pi / 2) <= plain.error_estimate + plain.tail_truncation_bound));
}

TEST_CASE("integrable singularity at the origin") {
  QuadratureSpec spec;
  spec.head_singularity = -0.5;
  auto r = integrate_interval([](double u) { return 1.0 / std::sqrt(u); }, 0.0, 1.0, 1e-10, 1e-10);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
  auto s = integrate_semi_infinite([](double u) { return std::exp(-u) / std::sqrt(u); }, spec);
  CHECK(s.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-8));
}

TEST_CASE("linearity") {
  auto f = [](double u) { return std::exp(-u) * std::cos(u); };
  auto g = [](double u) { return 1.0 / (1.0 + u * u * u); };
  const double a = 2.5, b = -0.75;
  QuadratureSpec spec;
  auto rf = integrate_semi_infinite(f, spec);
  auto rg = integrate_semi_infinite(g, spec);
  auto rs = integrate_semi_infinite([&](double u) { return a * f(u) + b * g(u); }, spec);
  const double tol = std::abs(a) * rf.error_estimate + std::abs(b) * rg.error_estimate + rs.error_estimate;
  CHECK(std::abs(rs.value - (a * rf.value + b * rg.value)) <= 10.0 * tol + 1e-12);
}

TEST_CASE("error estimates are honest and refinement is monotone") {
  struct Fixture {
    RealFunction f;
    double exact;
    std::optional<double> period;
  };
  const Fixture fixtures[] = {
      {[](double u) { return 1.0 / (1.0 + u * u); }, pi / 2, std::nullopt},
      {[](double u) { return std::exp(-2.0 * u); }, 0.5, std::nullopt},
      {[](double u) { return u == 0.0 ? 1.0 : std::sin(u) / u * std::exp(-u); }, pi / 4, std::nullopt},
      {[](double u) { return std::cos(u) / (1.0 + u * u); }, pi / (2.0 * std::exp(1.0)), 2.0 * pi},
  };
  for (const auto& fx : fixtures) {
    double previous = kInf;
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
      QuadratureSpec spec;
      spec.abs_tol = spec.rel_tol = tol;
      auto r = integrate_semi_infinite(fx.f, spec, fx.period);
      const double err = std::abs(r.value - fx.exact);
      CHECK(err <= 10.0 * (r.error_estimate + r.tail_truncation_bound) + 1e-13);
      CHECK(err <= std::max(previous, 1e-13) * (1.0 + 1e-9));
      previous = std::max(err, 1e-14);
    }
  }
}

TEST_CASE("tail split integrates smooth and oscillatory parts separately") {
  // e^{-u} + cos(u)/(1+u^2)
  TailSplit ts;
  ts.smooth = [](double u) { return std::exp(-u); };
  ts.oscillatory = [](double u) { return std::cos(u) / (1.0 + u * u); };
  ts.whole = [&](double u) { return ts.smooth(u) + ts.oscillatory(u); };
  auto r = integrate_semi_infinite(ts, QuadratureSpec{}, 2.0 * pi);
  CHECK(r.value == doctest::Approx(1.0 + pi / (2.0 * std::exp(1.0))).epsilon(1e-8));
}

TEST_CASE("Fourier panels against a brute-force sum") {
  // int_1^40 e^{i 7 y} / y^2 dy
  auto g = [](double y) { return std::complex<double>(1.0 / (y * y), 0.0); };
  auto r = integrate_fourier(g, 7.0, 1.0, 40.0, 1e-11, 1e-11);
  const double re = oracle::midpoint([](double y) { return std::cos(7.0 * y) / (y * y); }, 1.0, 40.0, 4'000'000);
  const double im = oracle::midpoint([](double y) { return std::sin(7.0 * y) / (y * y); }, 1.0, 40.0, 4'000'000);
  CHECK(std::abs(r.value.real() - re) < 1e-9);
  CHECK(std::abs(r.value.imag() - im) < 1e-9);
}

TEST_CASE("integrability probe classifications") {
  auto sq = integrability_probe([](double u) { return 1.0 / std::sqrt(u); }, Interval{0.0, 1.0});
  CHECK(sq.verdict == Integrability::Finite);
  CHECK(sq.finite_estimate == doctest::Approx(2.0).epsilon(1e-3));

  auto inv = integrability_probe([](double u) { return 1.0 / u; }, Interval{0.0, 1.0});
  CHECK(inv.verdict == Integrability::Diverging);
  CHECK_FALSE(inv.evidence.empty());

  // int_0^inf du/(1+u^{3/2}) = (2pi/3)/sin(2pi/3), checked against a mapped midpoint sum.
  auto f = [](double u) { return 1.0 / (1.0 + std::pow(u, 1.5)); };
  const double brute = oracle::midpoint(
      [&](double t) { const double u = t / (1.0 - t); return f(u) / ((1.0 - t) * (1.0 - t)); }, 0.0, 1.0, 4'000'000);
  REQUIRE(brute == doctest::Approx(2.0 * pi / 3.0 / std::sin(2.0 * pi / 3.0)).epsilon(1e-4));
  auto p = integrability_probe(f, Interval{0.0, kInf});
  CHECK(p.verdict == Integrability::Finite);
  CHECK(p.finite_estimate == doctest::Approx(brute).epsilon(1e-4));

  auto lin = integrability_probe([](double u) { return 1.0 / (1.0 + u); }, Interval{0.0, kInf});
  CHECK(lin.verdict == Integrability::Diverging);
}

TEST_CASE("invalid specs are rejected") {
  QuadratureSpec s;
  s.abs_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  QuadratureSpec t;
  t.split_point = 0.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  QuadratureSpec h;
  h.head_singularity = -1.0;
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}

}  // TEST_SUITE
