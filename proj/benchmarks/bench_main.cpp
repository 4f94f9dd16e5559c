#include <benchmark/benchmark.h>

#include <vector>

#include "levy/localtime.hpp"
#include "levy/pathsim.hpp"
#include "levy/resolvent.hpp"
#include "levy/symbol.hpp"

namespace {

void BM_SymbolClosedForm(benchmark::State& st) {
  auto m = levy::preset("stable_asym");
  double u = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(levy::symbol(m, u));
    u = u < 100.0 ? u * 1.1 : 0.1;
  }
}
BENCHMARK(BM_SymbolClosedForm);

void BM_SymbolQuadrature(benchmark::State& st) {
  const char* names[] = {"truncated_stable", "tempered_stable", "integrable_drift"};
  auto m = levy::preset(names[st.range(0)]);
  double u = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(levy::symbol(m, u));
    u = u < 100.0 ? u * 1.3 : 0.1;
  }
  st.SetLabel(names[st.range(0)]);
}
BENCHMARK(BM_SymbolQuadrature)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_HStable(benchmark::State& st) {
  auto m = levy::preset("stable_asym");
  double x = -2.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(levy::renormalized_zero_resolvent(m, x).h);
    x = x < 2.0 ? x + 0.37 : -2.0;
  }
}
BENCHMARK(BM_HStable)->Unit(benchmark::kMillisecond);

void BM_ResolventBrownian(benchmark::State& st) {
  auto m = levy::preset("brownian");
  for (auto _ : st) benchmark::DoNotOptimize(levy::resolvent_density(m, 1.0, 0.7).value);
}
BENCHMARK(BM_ResolventBrownian)->Unit(benchmark::kMillisecond);

void BM_SimulatePath(benchmark::State& st) {
  const char* names[] = {"brownian", "stable_asym", "tempered_stable"};
  levy::SimConfig cfg;
  cfg.n_steps = 1000;
  cfg.small_jump_cutoff = 1e-2;
  levy::PathSimulator sim(levy::preset(names[st.range(0)]), cfg);
  std::vector<double> s;
  std::uint64_t i = 0;
  for (auto _ : st) {
    sim.simulate(i++, s);
    benchmark::DoNotOptimize(s.data());
  }
  st.SetItemsProcessed(st.iterations() * cfg.n_steps);
  st.SetLabel(names[st.range(0)]);
}
BENCHMARK(BM_SimulatePath)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_OccupationLocalTime(benchmark::State& st) {
  levy::SimConfig cfg;
  cfg.n_steps = static_cast<int>(st.range(0));
  auto p = levy::sample_path(levy::preset("stable_asym"), cfg, 0);
  for (auto _ : st) benchmark::DoNotOptimize(levy::occupation_local_time(p, 0.0, 1.0, 0.05).value);
  st.SetItemsProcessed(st.iterations() * cfg.n_steps);
}
BENCHMARK(BM_OccupationLocalTime)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
