#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "riskmkt/mechanism.hpp"
#include "riskmkt/planner.hpp"
#include "riskmkt/risk_measures.hpp"

using namespace riskmkt;

namespace {

const std::vector<GeneratorParams> kGens{{1.0, 3.0}, {2.0, 6.0}};

RenewableDistribution dist_for(int kind) {
  switch (kind) {
    case 0:
      return RenewableDistribution::uniform(1.0);
    case 1:
      return RenewableDistribution::truncated_normal(0.5, 0.25, 1.0);
    default:
      return RenewableDistribution::piecewise_linear(
          {{0.0, 0.4}, {0.3, 1.6}, {0.7, 1.2}, {1.0, 0.2}});
  }
}

void BM_SolveSpp(benchmark::State& state) {
  const MarketInstance inst(kGens, 2.0, RiskParams{0.8, 0.5},
                            dist_for(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_spp(inst).y_star);
  state.SetLabel(std::string(to_string(inst.dist().kind())));
}
BENCHMARK(BM_SolveSpp)->DenseRange(0, 2);

void BM_CvarSamples(benchmark::State& state) {
  RngStream rng(1);
  std::vector<double> losses(static_cast<std::size_t>(state.range(0)));
  for (auto& x : losses) x = uniform01(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cvar_samples(losses, 0.95));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CvarSamples)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

void BM_KktResiduals(benchmark::State& state) {
  const MarketInstance inst(kGens, 2.0, RiskParams{0.8, 0.5}, dist_for(1));
  const auto sol = solve_spp(inst);
  const auto grid = default_w_grid(sol, inst);
  for (auto _ : state) benchmark::DoNotOptimize(kkt_residuals(sol, inst, grid).max_residual());
}
BENCHMARK(BM_KktResiduals);

void BM_Simulate(benchmark::State& state) {
  const auto dist = dist_for(0);
  for (auto _ : state) {
    RngStream rng(7);
    auto r = simulate_runs(kGens, 2.0, RiskParams{0.8, 0.5}, dist,
                           static_cast<std::size_t>(state.range(0)), rng);
    benchmark::DoNotOptimize(r.summary.mean_iso_outlay);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
