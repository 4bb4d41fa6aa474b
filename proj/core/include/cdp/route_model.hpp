#pragma once

#include <string>
#include <vector>

#include "cdp/errors.hpp"

namespace cdp {

/// A (performance, energy) pair. Performance is a completion probability in
/// [0, 1]; energy is a nonnegative cost in abstract units.
struct PerfEnergy {
  double perf{0.0};
  double energy{0.0};

  bool operator==(const PerfEnergy&) const = default;
};

/// Pair combination: performance multiplies, energy adds. (1, 0) is the
/// identity; the operation is associative and commutative.
inline PerfEnergy combine(const PerfEnergy& a, const PerfEnergy& b) {
  return {a.perf * b.perf, a.energy + b.energy};
}

/// Pareto dominance: a is at least as good on both axes (higher perf, lower
/// energy) and strictly better on at least one. Equal pairs do not dominate.
inline bool dominates(const PerfEnergy& a, const PerfEnergy& b) {
  return a.perf >= b.perf && a.energy <= b.energy &&
         (a.perf > b.perf || a.energy < b.energy);
}

/// Maximal antichain of `pairs` under dominates(); exact duplicates collapse.
/// The result is sorted by ascending energy, with strictly increasing perf.
std::vector<PerfEnergy> prune(std::vector<PerfEnergy> pairs);

/// One row of a method profile: `perf` completion mass lands exactly at
/// `time` (integer time units), at a fixed per-method energy cost.
struct ExecutionOption {
  int time{1};
  double perf{0.0};
  double energy{0.0};

  bool operator==(const ExecutionOption&) const = default;
};

/// One alternative way a node can execute: a discrete completion-time
/// profile plus a deterministic energy cost. Option times are strictly
/// increasing; mass not accounted for by the options is the probability the
/// method never completes.
struct MethodProfile {
  std::string id;
  std::vector<ExecutionOption> options;

  /// The method's energy cost (constant across its options).
  double energy() const { return options.empty() ? 0.0 : options.front().energy; }

  bool operator==(const MethodProfile&) const = default;
};

/// A node in the chain with its alternative methods.
struct NodeSpec {
  std::string id;
  std::vector<MethodProfile> methods;

  bool operator==(const NodeSpec&) const = default;
};

/// A series chain of nodes, a total time budget and a required completion
/// confidence. The solver picks one method per node and a per-node time
/// allotment.
struct RouteProblem {
  std::vector<NodeSpec> nodes;
  int time_constraint{1};
  double confidence{1.0};

  bool operator==(const RouteProblem&) const = default;
};

/// Cumulative completion curve of a method: curve[t] is the probability of
/// completion within t time units, for t in [0, horizon]. Nondecreasing and
/// capped at 1 (profiles whose masses sum above 1 saturate; the excess is
/// unreachable).
std::vector<double> cumulative_curve(const MethodProfile& m, int horizon);

/// Checks every structural invariant of a RouteProblem and throws
/// ValidationError with the offending field path on the first violation.
/// The time budget vs. chain length check is not done here; the solver
/// reports that case as InfeasibleTime.
void validate_problem(const RouteProblem& p);

}  // namespace cdp
