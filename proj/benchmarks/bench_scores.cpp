#include <benchmark/benchmark.h>

#include <vector>

#include "evalcast/evalcast.hpp"

namespace {

using namespace evalcast;

std::vector<double> normals(std::size_t n, std::uint64_t stream) {
  rng::Stream s(1, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = s.normal();
  return v;
}

void BM_CrpsEnsemble(benchmark::State& state) {
  const auto xs = normals(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(crps_ensemble(xs, 0.3));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CrpsEnsemble)->Arg(20)->Arg(50)->Arg(1000);

void BM_LogsKde(benchmark::State& state) {
  const auto xs = normals(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(logs_kde(xs, 0.3));
}
BENCHMARK(BM_LogsKde)->Arg(20)->Arg(1000);

void BM_VariogramScore(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> f(d);
  for (std::size_t i = 0; i < d; ++i) f[i] = normals(20, 10 + i);
  std::vector<std::span<const double>> view(f.begin(), f.end());
  const auto y = normals(d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(variogram_score(view, y));
}
BENCHMARK(BM_VariogramScore)->Arg(12)->Arg(48);

void BM_ChangeDetection(benchmark::State& state) {
  const auto s = normals(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(detect_change_event(s, 1.5, 6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChangeDetection)->Arg(1000)->Arg(100000);

void BM_MarginalDefaultScenario(benchmark::State& state) {
  const auto data = datagen::generate(datagen::default_scenario());
  MarginalOptions opts;
  opts.by_lead_time = true;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_marginal_distribution(data, opts));
}
BENCHMARK(BM_MarginalDefaultScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
