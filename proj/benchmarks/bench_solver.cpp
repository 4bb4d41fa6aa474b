#include <benchmark/benchmark.h>

#include "cdp/dp_solver.hpp"
#include "cdp/oracle.hpp"
#include "cdp/rng.hpp"
#include "cdp/route_model.hpp"

namespace {

// Chains of n nodes, two methods each, profiles spread over small times.
cdp::RouteProblem chain(int nodes, int horizon) {
  cdp::SplitMix64 rng(4242);
  cdp::RouteProblem p;
  for (int n = 0; n < nodes; ++n) {
    cdp::NodeSpec node;
    node.id = std::to_string(n);
    for (int m = 0; m < 2; ++m) {
      cdp::MethodProfile profile;
      profile.id = "M" + std::to_string(m + 1);
      const double energy = static_cast<double>(1 + rng.next() % 9);
      const int start = 1 + static_cast<int>(rng.next() % 3);
      profile.options.push_back({start, 0.7, energy});
      profile.options.push_back({start + 1 + static_cast<int>(rng.next() % 2), 0.3, energy});
      node.methods.push_back(std::move(profile));
    }
    p.nodes.push_back(std::move(node));
  }
  p.time_constraint = horizon;
  p.confidence = 0.05;
  return p;
}

void BM_BuildFrontiers(benchmark::State& state) {
  const cdp::RouteProblem p = chain(static_cast<int>(state.range(0)), 25);
  for (auto _ : state) {
    auto frontier = cdp::build_frontiers(p);
    benchmark::DoNotOptimize(frontier);
  }
}
BENCHMARK(BM_BuildFrontiers)->DenseRange(2, 10, 2);

void BM_Solve(benchmark::State& state) {
  const cdp::RouteProblem p = chain(7, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto solution = cdp::solve(p);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_Solve)->DenseRange(10, 40, 10);

void BM_SolveUnpruned(benchmark::State& state) {
  const cdp::RouteProblem p = chain(4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto solution = cdp::solve(p, {.prune = false});
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_SolveUnpruned)->DenseRange(6, 12, 2);

void BM_OracleSolve(benchmark::State& state) {
  const cdp::RouteProblem p = chain(static_cast<int>(state.range(0)), 12);
  for (auto _ : state) {
    auto solution = cdp::oracle::oracle_solve(p);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_OracleSolve)->DenseRange(2, 6, 1);

}  // namespace
