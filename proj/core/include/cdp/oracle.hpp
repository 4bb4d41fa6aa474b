#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cdp/dp_solver.hpp"
#include "cdp/route_model.hpp"

namespace cdp {
namespace oracle {

/// Work guard for the exhaustive enumeration: number of assignments times
/// number of time splits. Instances above this are refused with TooLarge.
inline constexpr double kEnumerationGuard = 1e8;

/// Number of method assignments (product of per-node method counts).
double count_assignments(const RouteProblem& p);

/// Number of time splits with positive per-node allotments summing to at
/// most the budget: C(T, n).
double count_splits(const RouteProblem& p);

bool is_too_large(const RouteProblem& p);

/// Visits every (node -> method) assignment exactly once, in lexicographic
/// method-id order with the first node most significant. The callback
/// receives one method id per node, in node order.
void for_each_assignment(const RouteProblem& p,
                         const std::function<void(const std::vector<std::string>&)>& fn);

/// Per-budget Pareto frontiers computed by exhaustive enumeration of every
/// assignment and every time split, with no recurrence: the independent
/// reference for build_frontiers(). Same canonical layout and tie-breaking.
ParetoFrontier frontier(const RouteProblem& p);

/// Exact optimum under the same selection rule as solve(). Refuses
/// oversized instances with TooLarge.
RouteSolution oracle_solve(const RouteProblem& p);

/// Enumerated counterpart of full_frontier().
std::vector<FrontierRow> oracle_full_frontier(const RouteProblem& p);

/// Best split-semantics performance of one fixed assignment within the
/// budget: max over time splits of the product of per-node cumulative
/// curves. Returns 0 when no split fits.
double best_split_perf(const RouteProblem& p,
                       const std::vector<std::string>& method_ids, int budget);

/// P(sum of per-node completion times <= budget) for a fixed assignment,
/// by exact discrete convolution. Mass a profile never places (its failure
/// probability) is treated as completion at +infinity.
double exact_probability(const RouteProblem& p,
                         const std::vector<std::string>& method_ids, int budget);

}  // namespace oracle
}  // namespace cdp
