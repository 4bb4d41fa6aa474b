#include "cdp/dp_solver.hpp"

#include <algorithm>
#include <cstddef>

namespace cdp {

namespace detail {

bool entry_order(const FrontierEntry& a, const FrontierEntry& b) {
  if (a.pair.energy != b.pair.energy) return a.pair.energy < b.pair.energy;
  if (a.pair.perf != b.pair.perf) return a.pair.perf > b.pair.perf;
  const std::size_t n = std::min(a.assignment.size(), b.assignment.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = a.assignment[i].method_id.compare(b.assignment[i].method_id);
    if (c != 0) return c < 0;
  }
  if (a.assignment.size() != b.assignment.size())
    return a.assignment.size() < b.assignment.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.assignment[i].time != b.assignment[i].time)
      return a.assignment[i].time < b.assignment[i].time;
  }
  return false;
}

void prune_entries(std::vector<FrontierEntry>& entries, bool do_prune) {
  std::sort(entries.begin(), entries.end(), entry_order);
  if (!do_prune) return;
  std::vector<FrontierEntry> kept;
  kept.reserve(entries.size());
  double best_perf = -1.0;
  for (FrontierEntry& e : entries) {
    if (!kept.empty() && kept.back().pair == e.pair) continue;
    if (e.pair.perf <= best_perf) continue;
    kept.push_back(std::move(e));
    best_perf = kept.back().pair.perf;
  }
  entries = std::move(kept);
}

const FrontierEntry* select_best(const ParetoFrontier& f, int time_constraint,
                                 double confidence) {
  const FrontierEntry* best = nullptr;
  const int limit = std::min(time_constraint, f.horizon);
  for (int t = 1; t <= limit; ++t) {
    for (const FrontierEntry& e : f.per_time[static_cast<std::size_t>(t)]) {
      if (e.pair.perf < confidence) continue;
      if (best == nullptr || entry_order(e, *best)) best = &e;
    }
  }
  return best;
}

std::optional<FrontierEntry> best_perf_entry(const ParetoFrontier& f,
                                             int time_constraint) {
  const FrontierEntry* best = nullptr;
  const int limit = std::min(time_constraint, f.horizon);
  for (int t = 1; t <= limit; ++t) {
    for (const FrontierEntry& e : f.per_time[static_cast<std::size_t>(t)]) {
      if (best == nullptr || e.pair.perf > best->pair.perf ||
          (e.pair.perf == best->pair.perf && entry_order(e, *best)))
        best = &e;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

}  // namespace detail

ParetoFrontier build_frontiers(const RouteProblem& p, const SolverOptions& opts) {
  validate_problem(p);
  const int node_count = static_cast<int>(p.nodes.size());
  const int horizon = p.time_constraint;
  if (horizon < node_count)
    throw InfeasibleTime("time constraint " + std::to_string(horizon) +
                         " cannot fit " + std::to_string(node_count) + " nodes");

  // Layer 0: the empty chain achieves (1, 0) at every budget.
  std::vector<std::vector<FrontierEntry>> prev(static_cast<std::size_t>(horizon) + 1);
  for (auto& layer : prev) layer.push_back(FrontierEntry{{1.0, 0.0}, {}, 0});

  for (int i = 0; i < node_count; ++i) {
    const NodeSpec& node = p.nodes[static_cast<std::size_t>(i)];
    std::vector<std::vector<double>> curves;
    curves.reserve(node.methods.size());
    for (const MethodProfile& m : node.methods)
      curves.push_back(cumulative_curve(m, horizon));

    std::vector<std::vector<FrontierEntry>> cur(static_cast<std::size_t>(horizon) + 1);
    for (int t = i + 1; t <= horizon; ++t) {
      std::vector<FrontierEntry> candidates;
      for (std::size_t mi = 0; mi < node.methods.size(); ++mi) {
        const MethodProfile& m = node.methods[mi];
        const double method_energy = m.energy();
        for (int tau = 1; tau <= t - i; ++tau) {
          const double curve_value = curves[mi][static_cast<std::size_t>(tau)];
          if (curve_value <= 0.0) continue;
          for (const FrontierEntry& e :
               prev[static_cast<std::size_t>(t - tau)]) {
            FrontierEntry next;
            next.pair = combine(e.pair, {curve_value, method_energy});
            if (next.pair.perf <= 0.0) continue;
            next.assignment = e.assignment;
            next.assignment.push_back({node.id, m.id, tau});
            next.time_used = e.time_used + tau;
            candidates.push_back(std::move(next));
          }
        }
      }
      detail::prune_entries(candidates, opts.prune);
      cur[static_cast<std::size_t>(t)] = std::move(candidates);
    }
    prev = std::move(cur);
  }

  ParetoFrontier frontier;
  frontier.horizon = horizon;
  frontier.per_time = std::move(prev);
  return frontier;
}

RouteSolution solve(const RouteProblem& p, const SolverOptions& opts) {
  const ParetoFrontier frontier = build_frontiers(p, opts);
  const FrontierEntry* best =
      detail::select_best(frontier, p.time_constraint, p.confidence);
  if (best == nullptr) {
    auto diag = detail::best_perf_entry(frontier, p.time_constraint);
    std::string what = "no route reaches confidence " +
                       std::to_string(p.confidence) + " within time " +
                       std::to_string(p.time_constraint);
    if (diag)
      what += " (best perf found: " + std::to_string(diag->pair.perf) + ")";
    throw NoFeasibleRoute(what, std::move(diag));
  }
  return RouteSolution{best->assignment, best->pair, best->time_used};
}

std::vector<FrontierRow> full_frontier(const RouteProblem& p,
                                       const SolverOptions& opts) {
  const ParetoFrontier frontier = build_frontiers(p, opts);
  std::vector<FrontierRow> rows;
  for (int t = 1; t <= frontier.horizon; ++t)
    for (const FrontierEntry& e : frontier.per_time[static_cast<std::size_t>(t)])
      rows.push_back(FrontierRow{t, e});
  return rows;
}

PerfEnergy evaluate(const RouteProblem& p, const std::vector<NodeChoice>& assignment) {
  if (assignment.size() != p.nodes.size())
    throw ValidationError("assignment", "must cover every node exactly once");
  PerfEnergy acc{1.0, 0.0};
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const NodeSpec& node = p.nodes[i];
    const NodeChoice& choice = assignment[i];
    if (choice.node_id != node.id)
      throw ValidationError("assignment[" + std::to_string(i) + "].node_id",
                            "expected node '" + node.id + "'");
    const MethodProfile* method = nullptr;
    for (const MethodProfile& m : node.methods)
      if (m.id == choice.method_id) method = &m;
    if (method == nullptr)
      throw ValidationError("assignment[" + std::to_string(i) + "].method_id",
                            "unknown method '" + choice.method_id + "'");
    if (choice.time < 1)
      throw ValidationError("assignment[" + std::to_string(i) + "].time",
                            "must be >= 1");
    const std::vector<double> curve = cumulative_curve(*method, choice.time);
    acc = combine(acc, {curve[static_cast<std::size_t>(choice.time)], method->energy()});
  }
  return acc;
}

}  // namespace cdp
