#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "levy/parallel.hpp"
#include "levy/spatial_grid.hpp"

using namespace levy;

TEST_SUITE("grid") {

TEST_CASE("sinh nodes") {
  auto x = sinh_graded_nodes(0.0, -5.0, 3.0, 0.01, 201);
  REQUIRE(x.size() == 201);
  CHECK(x.front() == doctest::Approx(-5.0));
  CHECK(x.back() == doctest::Approx(3.0));
  for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
  double near = 1e300;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] <= 0.0 && x[i] >= 0.0) near = x[i] - x[i - 1];
  }
  CHECK(near < 0.05);
  CHECK(x.back() - x[x.size() - 2] > 10.0 * near);
}

TEST_CASE("monotone cubic reproduces linear data") {
  std::vector<double> x = {0.0, 0.3, 1.0, 1.1, 2.5}, y;
  for (double v : x) y.push_back(2.0 * v - 1.0);
  MonotoneCubic p(x, y);
  for (double z : {0.0, 0.15, 0.7, 1.05, 2.0, 2.5}) CHECK(p(z) == doctest::Approx(2.0 * z - 1.0).epsilon(1e-14));
  CHECK(p.antiderivative(2.0) == doctest::Approx(4.0 - 2.0 - 0.0));
  CHECK(p.box_average(1.2, 0.1) == doctest::Approx(2.0 * 1.2 - 1.0).epsilon(1e-13));
  CHECK(p(-1.0) == -1.0);
  CHECK(p(3.0) == 4.0);
}

TEST_CASE("monotone data stays monotone") {
  std::vector<double> x = {0.0, 1.0, 1.1, 2.0, 5.0}, y = {0.0, 0.0, 1.0, 1.0, 1.2};
  MonotoneCubic p(x, y);
  double prev = -1e300;
  for (int i = 0; i <= 500; ++i) {
    const double v = p(5.0 * i / 500.0);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("tabulated exponential") {
  auto p = tabulate([](double z) { return std::exp(-std::abs(z)); }, 0.0, -6.0, 6.0, GridBuildOptions{1025, 0.01, 2});
  for (double z : {-4.0, -0.5, 0.0, 0.003, 1.7}) CHECK(p(z) == doctest::Approx(std::exp(-std::abs(z))).epsilon(1e-5));
  // (1/2eps) int e^{-|s|} over (-eps, eps) = (1 - e^{-eps}) / eps
  CHECK(p.box_average(0.0, 0.1) == doctest::Approx((1.0 - std::exp(-0.1)) / 0.1).epsilon(1e-6));
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i, unsigned) { hits[i]++; }, 4);
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i, unsigned) { if (i == 57) throw std::runtime_error("x"); }, 3),
                  std::runtime_error);
  CHECK(default_workers() >= 1);
}

}  // TEST_SUITE
