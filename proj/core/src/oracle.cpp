#include "cdp/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <utility>

namespace cdp {
namespace oracle {

namespace {

const MethodProfile& method_by_id(const NodeSpec& node, const std::string& id) {
  for (const MethodProfile& m : node.methods)
    if (m.id == id) return m;
  throw ValidationError("method_ids", "unknown method '" + id + "' at node '" +
                                          node.id + "'");
}

// Pruned antichain kept sorted by strictly ascending energy (and therefore
// strictly ascending perf). Insertion keeps the canonical representative on
// exact (perf, energy) ties, so the content is independent of insertion
// order.
void antichain_insert(std::vector<FrontierEntry>& chain, const FrontierEntry& e) {
  auto it = std::lower_bound(
      chain.begin(), chain.end(), e.pair.energy,
      [](const FrontierEntry& a, double energy) { return a.pair.energy < energy; });
  if (it != chain.end() && it->pair.energy == e.pair.energy) {
    if (it->pair.perf > e.pair.perf) return;
    if (it->pair.perf == e.pair.perf) {
      if (detail::entry_order(e, *it)) *it = e;
      return;
    }
  }
  if (it != chain.begin() && std::prev(it)->pair.perf >= e.pair.perf) return;
  auto last = it;
  while (last != chain.end() && last->pair.perf <= e.pair.perf) ++last;
  it = chain.erase(it, last);
  chain.insert(it, e);
}

struct Enumeration {
  const RouteProblem& problem;
  std::vector<std::vector<std::size_t>> method_order;  // per node, sorted by id
  std::vector<std::vector<std::vector<double>>> curves; // node x method x time
  std::vector<std::vector<FrontierEntry>> buckets;      // by exact total time
  std::vector<NodeChoice> picks;

  explicit Enumeration(const RouteProblem& p) : problem(p) {
    const int horizon = p.time_constraint;
    method_order.resize(p.nodes.size());
    curves.resize(p.nodes.size());
    for (std::size_t n = 0; n < p.nodes.size(); ++n) {
      const NodeSpec& node = p.nodes[n];
      method_order[n].resize(node.methods.size());
      for (std::size_t m = 0; m < node.methods.size(); ++m) method_order[n][m] = m;
      std::sort(method_order[n].begin(), method_order[n].end(),
                [&node](std::size_t a, std::size_t b) {
                  return node.methods[a].id < node.methods[b].id;
                });
      curves[n].reserve(node.methods.size());
      for (const MethodProfile& m : node.methods)
        curves[n].push_back(cumulative_curve(m, horizon));
    }
    buckets.resize(static_cast<std::size_t>(horizon) + 1);
  }

  void run() { descend(0, 0, PerfEnergy{1.0, 0.0}); }

  void descend(std::size_t node_index, int used, PerfEnergy acc) {
    const NodeSpec& node = problem.nodes[node_index];
    const int remaining_min =
        static_cast<int>(problem.nodes.size() - node_index - 1);
    const int max_tau = problem.time_constraint - used - remaining_min;
    for (std::size_t mi : method_order[node_index]) {
      const MethodProfile& m = node.methods[mi];
      const double method_energy = m.energy();
      for (int tau = 1; tau <= max_tau; ++tau) {
        const double curve_value = curves[node_index][mi][static_cast<std::size_t>(tau)];
        if (curve_value <= 0.0) continue;
        const PerfEnergy pair = combine(acc, {curve_value, method_energy});
        picks.push_back({node.id, m.id, tau});
        if (node_index + 1 == problem.nodes.size()) {
          FrontierEntry entry{pair, picks, used + tau};
          antichain_insert(buckets[static_cast<std::size_t>(used + tau)], entry);
        } else {
          descend(node_index + 1, used + tau, pair);
        }
        picks.pop_back();
      }
    }
  }
};

}  // namespace

double count_assignments(const RouteProblem& p) {
  double count = 1.0;
  for (const NodeSpec& n : p.nodes) count *= static_cast<double>(n.methods.size());
  return count;
}

double count_splits(const RouteProblem& p) {
  // Compositions of at most T into n positive parts: C(T, n).
  const double t = static_cast<double>(p.time_constraint);
  const double n = static_cast<double>(p.nodes.size());
  if (n > t) return 0.0;
  double result = 1.0;
  for (double k = 1.0; k <= n; k += 1.0) result *= (t - n + k) / k;
  return result;
}

bool is_too_large(const RouteProblem& p) {
  return count_assignments(p) * count_splits(p) > kEnumerationGuard;
}

void for_each_assignment(const RouteProblem& p,
                         const std::function<void(const std::vector<std::string>&)>& fn) {
  std::vector<std::vector<std::string>> ids(p.nodes.size());
  for (std::size_t n = 0; n < p.nodes.size(); ++n) {
    for (const MethodProfile& m : p.nodes[n].methods) ids[n].push_back(m.id);
    std::sort(ids[n].begin(), ids[n].end());
  }
  std::vector<std::size_t> odo(p.nodes.size(), 0);
  std::vector<std::string> current(p.nodes.size());
  for (;;) {
    for (std::size_t n = 0; n < odo.size(); ++n) current[n] = ids[n][odo[n]];
    fn(current);
    std::size_t n = odo.size();
    while (n > 0) {
      --n;
      if (++odo[n] < ids[n].size()) break;
      odo[n] = 0;
      if (n == 0) return;
    }
  }
}

ParetoFrontier frontier(const RouteProblem& p) {
  validate_problem(p);
  const int node_count = static_cast<int>(p.nodes.size());
  if (p.time_constraint < node_count)
    throw InfeasibleTime("time constraint " + std::to_string(p.time_constraint) +
                         " cannot fit " + std::to_string(node_count) + " nodes");
  if (is_too_large(p))
    throw TooLarge("enumeration of " + std::to_string(count_assignments(p)) +
                   " assignments x " + std::to_string(count_splits(p)) +
                   " splits exceeds the oracle guard");

  Enumeration enumeration(p);
  enumeration.run();

  ParetoFrontier result;
  result.horizon = p.time_constraint;
  result.per_time.resize(static_cast<std::size_t>(p.time_constraint) + 1);
  std::vector<FrontierEntry> running;
  for (int t = 1; t <= p.time_constraint; ++t) {
    for (const FrontierEntry& e : enumeration.buckets[static_cast<std::size_t>(t)])
      antichain_insert(running, e);
    result.per_time[static_cast<std::size_t>(t)] = running;
  }
  return result;
}

RouteSolution oracle_solve(const RouteProblem& p) {
  const ParetoFrontier f = frontier(p);
  const FrontierEntry* best = detail::select_best(f, p.time_constraint, p.confidence);
  if (best == nullptr) {
    auto diag = detail::best_perf_entry(f, p.time_constraint);
    std::string what = "no route reaches confidence " +
                       std::to_string(p.confidence) + " within time " +
                       std::to_string(p.time_constraint);
    if (diag)
      what += " (best perf found: " + std::to_string(diag->pair.perf) + ")";
    throw NoFeasibleRoute(what, std::move(diag));
  }
  return RouteSolution{best->assignment, best->pair, best->time_used};
}

std::vector<FrontierRow> oracle_full_frontier(const RouteProblem& p) {
  const ParetoFrontier f = frontier(p);
  std::vector<FrontierRow> rows;
  for (int t = 1; t <= f.horizon; ++t)
    for (const FrontierEntry& e : f.per_time[static_cast<std::size_t>(t)])
      rows.push_back(FrontierRow{t, e});
  return rows;
}

namespace {

double best_split_rec(const RouteProblem& p,
                      const std::vector<std::vector<double>>& curves,
                      std::size_t node_index, int remaining, double acc) {
  const int remaining_min = static_cast<int>(p.nodes.size() - node_index - 1);
  double best = 0.0;
  for (int tau = 1; tau <= remaining - remaining_min; ++tau) {
    const double c = curves[node_index][static_cast<std::size_t>(tau)];
    if (c <= 0.0) continue;
    const double value = acc * c;
    if (node_index + 1 == p.nodes.size()) {
      best = std::max(best, value);
    } else {
      best = std::max(best, best_split_rec(p, curves, node_index + 1,
                                           remaining - tau, value));
    }
  }
  return best;
}

// Per-option completion masses with the cumulative total capped at 1, so the
// implied distribution matches the clamped cumulative curve exactly.
std::vector<std::pair<int, double>> truncated_masses(const MethodProfile& m) {
  std::vector<std::pair<int, double>> masses;
  double raw = 0.0;
  for (const ExecutionOption& o : m.options) {
    const double before = std::min(raw, 1.0);
    raw += o.perf;
    const double after = std::min(raw, 1.0);
    masses.emplace_back(o.time, after - before);
  }
  return masses;
}

}  // namespace

double best_split_perf(const RouteProblem& p,
                       const std::vector<std::string>& method_ids, int budget) {
  validate_problem(p);
  if (method_ids.size() != p.nodes.size())
    throw ValidationError("method_ids", "must name one method per node");
  if (budget < static_cast<int>(p.nodes.size())) return 0.0;
  std::vector<std::vector<double>> curves;
  for (std::size_t n = 0; n < p.nodes.size(); ++n)
    curves.push_back(cumulative_curve(method_by_id(p.nodes[n], method_ids[n]), budget));
  return best_split_rec(p, curves, 0, budget, 1.0);
}

double exact_probability(const RouteProblem& p,
                         const std::vector<std::string>& method_ids, int budget) {
  validate_problem(p);
  if (method_ids.size() != p.nodes.size())
    throw ValidationError("method_ids", "must name one method per node");
  if (budget < 1) return 0.0;
  std::vector<double> dist(static_cast<std::size_t>(budget) + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t n = 0; n < p.nodes.size(); ++n) {
    const auto masses = truncated_masses(method_by_id(p.nodes[n], method_ids[n]));
    std::vector<double> next(dist.size(), 0.0);
    for (int k = 0; k <= budget; ++k) {
      for (const auto& [time, mass] : masses) {
        if (time > k) break;
        next[static_cast<std::size_t>(k)] +=
            dist[static_cast<std::size_t>(k - time)] * mass;
      }
    }
    dist = std::move(next);
  }
  double total = 0.0;
  for (double v : dist) total += v;
  return total;
}

}  // namespace oracle
}  // namespace cdp
