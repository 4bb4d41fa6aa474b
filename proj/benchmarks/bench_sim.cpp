#include <benchmark/benchmark.h>

#include "cdp/scenario_io.hpp"
#include "cdp/sim.hpp"

namespace {

cdp::sim::Scenario load(const char* name) {
  return cdp::io::parse_scenario(
      cdp::io::read_file(std::string(CDP_DATA_DIR) + "/scenarios/" + name));
}

void BM_RunUnstable(benchmark::State& state) {
  cdp::sim::Scenario s = load("unstable.scenario");
  s.horizon = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto result = cdp::sim::run(s, ++seed);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RunUnstable)->RangeMultiplier(2)->Range(256, 2048);

void BM_RunBaseline(benchmark::State& state) {
  cdp::sim::Scenario s = load("unstable.scenario");
  s.horizon = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto result = cdp::sim::baseline_direct_to_cloud(s, ++seed);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_RunBaseline)->RangeMultiplier(2)->Range(256, 2048);

void BM_TraceSerialize(benchmark::State& state) {
  const cdp::sim::Scenario s = load("unstable.scenario");
  const cdp::sim::SimResult r = cdp::sim::run(s, 1);
  for (auto _ : state) {
    auto text = cdp::io::trace_to_jsonl(r.trace);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_TraceSerialize);

}  // namespace
