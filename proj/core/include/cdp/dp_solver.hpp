#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdp/route_model.hpp"

namespace cdp {

/// One node's resolved choice: which method runs and how many time units it
/// is allotted.
struct NodeChoice {
  std::string node_id;
  std::string method_id;
  int time{1};

  bool operator==(const NodeChoice&) const = default;
};

/// A non-dominated frontier point together with the full reconstruction of
/// how it is achieved.
struct FrontierEntry {
  PerfEnergy pair;
  std::vector<NodeChoice> assignment;
  int time_used{0};

  bool operator==(const FrontierEntry&) const = default;
};

/// Per-budget Pareto frontiers for a whole chain. per_time[t] holds the
/// non-dominated (perf, energy) pairs achievable with total allotted time
/// <= t, sorted by ascending energy (perf strictly increasing). Index 0 is
/// always empty; valid budgets run 1..horizon.
struct ParetoFrontier {
  int horizon{0};
  std::vector<std::vector<FrontierEntry>> per_time;
};

/// One row of the frontier-vs-time-budget table.
struct FrontierRow {
  int time_budget{0};
  FrontierEntry entry;

  bool operator==(const FrontierRow&) const = default;
};

/// The chosen route: one method per node, the achieved (perf, energy) and
/// the total time consumed.
struct RouteSolution {
  std::vector<NodeChoice> assignment;
  PerfEnergy achieved;
  int time_used{0};

  bool operator==(const RouteSolution&) const = default;
};

struct SolverOptions {
  /// When false, dominated pairs are kept in every frontier layer. The
  /// solve() result must not change; exists for pruning-safety checks.
  bool prune = true;
};

/// No assignment reaches the required confidence within the time budget.
/// Carries the best-performance entry found, when any, for diagnostics.
class NoFeasibleRoute : public Error {
 public:
  NoFeasibleRoute(const std::string& what, std::optional<FrontierEntry> best)
      : Error(what), best_found_(std::move(best)) {}

  const std::optional<FrontierEntry>& best_found() const noexcept {
    return best_found_;
  }

 private:
  std::optional<FrontierEntry> best_found_;
};

/// Builds the per-budget Pareto frontiers for the chain by dynamic
/// programming: each node layer extends the previous one with every
/// (method, allotted time) pair, then prunes dominated entries. Zero-perf
/// entries are discarded eagerly.
///
/// Throws InfeasibleTime when the budget is smaller than the node count.
ParetoFrontier build_frontiers(const RouteProblem& p, const SolverOptions& opts = {});

/// Minimum-energy entry over all budgets t <= T with perf >= confidence.
/// Ties break toward higher perf, then the lexicographically smallest
/// method assignment, then the lexicographically smallest time split.
///
/// Throws NoFeasibleRoute when no entry reaches the confidence.
RouteSolution solve(const RouteProblem& p, const SolverOptions& opts = {});

/// The frontier as a flat table: one row per (time budget, entry), budgets
/// ascending, entries by ascending energy within a budget.
std::vector<FrontierRow> full_frontier(const RouteProblem& p,
                                       const SolverOptions& opts = {});

/// Recomputes the (perf, energy) of an assignment from the raw method
/// profiles, with the same operation order as the solver, so a frontier
/// entry's reconstruction reproduces its pair exactly.
PerfEnergy evaluate(const RouteProblem& p, const std::vector<NodeChoice>& assignment);

namespace detail {

/// Canonical entry order: ascending energy, then descending perf, then
/// lexicographic method ids, then lexicographic time split. Used for
/// frontier layout, duplicate collapse and solution tie-breaking, so the
/// solver and the brute-force oracle resolve ties identically.
bool entry_order(const FrontierEntry& a, const FrontierEntry& b);

/// Shared selection rule: minimum entry under entry_order() among all
/// entries with perf >= confidence in budgets 1..T. Null when none qualify.
const FrontierEntry* select_best(const ParetoFrontier& f, int time_constraint,
                                 double confidence);

/// Highest-perf entry across all budgets (ties: lower energy, then
/// canonical order); used for NoFeasibleRoute diagnostics.
std::optional<FrontierEntry> best_perf_entry(const ParetoFrontier& f,
                                             int time_constraint);

/// Sorts candidates into canonical order, collapses exact (perf, energy)
/// duplicates onto their canonical representative and, when `do_prune` is
/// set, removes dominated entries.
void prune_entries(std::vector<FrontierEntry>& entries, bool do_prune);

}  // namespace detail

}  // namespace cdp
