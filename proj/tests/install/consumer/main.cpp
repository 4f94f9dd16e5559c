#include <cmath>
#include <cstdio>

#include "levy/resolvent.hpp"

int main() {
  const double h = levy::renormalized_zero_resolvent(levy::preset("brownian"), 1.5).h;
  std::printf("h(1.5) = %.9f\n", h);
  return std::abs(h - 1.5) < 1e-6 ? 0 : 1;
}
