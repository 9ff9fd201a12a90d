// Serial reference vs OpenMP Monte Carlo driver on identical configurations.

#include <benchmark/benchmark.h>

#include "tsid/experiments.hpp"

namespace {

tsid::TrialConfig config_for(const benchmark::State& state) {
  tsid::TrialConfig config;
  config.n = static_cast<std::size_t>(state.range(0));
  config.trials = 2000;
  config.seed = 7;
  return config;
}

template <tsid::Property P>
void BM_Serial(benchmark::State& state) {
  const auto config = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(tsid::mc_estimate_serial(P, config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.trials));
}

template <tsid::Property P>
void BM_OpenMP(benchmark::State& state) {
  const auto config = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(tsid::mc_estimate(P, config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.trials));
}

}  // namespace

BENCHMARK(BM_Serial<tsid::Property::EndToEndIdentifiable>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP<tsid::Property::EndToEndIdentifiable>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial<tsid::Property::DistinctEigenvalues>)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP<tsid::Property::DistinctEigenvalues>)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial<tsid::Property::EndToEndContinuous>)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP<tsid::Property::EndToEndContinuous>)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
