#include <benchmark/benchmark.h>

#include <vector>

#include "dgrover/montecarlo.hpp"
#include "dgrover/statevector.hpp"

using namespace dgrover;

namespace {

const NoiseSpec kNoise{Distribution::gaussian(0.0, 0.04), Distribution::none()};

void BM_RunExperimentSerial(benchmark::State& state) {
  const PhaseSchedule s = improved_schedule(Fraction(0.001));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(s, kNoise, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperimentSerial)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RunExperimentParallel(benchmark::State& state) {
  const PhaseSchedule s = improved_schedule(Fraction(0.001));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(s, kNoise, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperimentParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

std::vector<std::uint64_t> marked(int qubits) {
  std::vector<std::uint64_t> m;
  for (std::uint64_t i = 0; i < 4; ++i) m.push_back(i * ((std::uint64_t{1} << qubits) / 4) + 1);
  return m;
}

void BM_FullSimulateSerial(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto m = marked(q);
  const PhaseSchedule s = improved_schedule(Fraction(4.0 / double(std::uint64_t{1} << q)));
  const std::vector<PhaseOffset> offsets(s.size());
  for (auto _ : state) benchmark::DoNotOptimize(full_simulate_serial(q, m, s, offsets));
}
BENCHMARK(BM_FullSimulateSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FullSimulateParallel(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto m = marked(q);
  const PhaseSchedule s = improved_schedule(Fraction(4.0 / double(std::uint64_t{1} << q)));
  const std::vector<PhaseOffset> offsets(s.size());
  for (auto _ : state) benchmark::DoNotOptimize(full_simulate(q, m, s, offsets));
}
BENCHMARK(BM_FullSimulateParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
