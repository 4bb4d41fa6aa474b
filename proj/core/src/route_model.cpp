#include "cdp/route_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cdp {

std::vector<PerfEnergy> prune(std::vector<PerfEnergy> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const PerfEnergy& a, const PerfEnergy& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.perf > b.perf;
  });
  std::vector<PerfEnergy> kept;
  kept.reserve(pairs.size());
  double best_perf = -1.0;
  for (const PerfEnergy& p : pairs) {
    if (!kept.empty() && kept.back() == p) continue;
    if (p.perf <= best_perf) continue;  // dominated by an earlier, cheaper pair
    kept.push_back(p);
    best_perf = p.perf;
  }
  return kept;
}

std::vector<double> cumulative_curve(const MethodProfile& m, int horizon) {
  std::vector<double> curve(static_cast<std::size_t>(std::max(horizon, 0)) + 1, 0.0);
  double running = 0.0;
  std::size_t next = 0;
  for (int t = 1; t <= horizon; ++t) {
    while (next < m.options.size() && m.options[next].time <= t) {
      running += m.options[next].perf;
      ++next;
    }
    curve[static_cast<std::size_t>(t)] = std::min(running, 1.0);
  }
  return curve;
}

namespace {

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void validate_option(const ExecutionOption& o, const std::string& path) {
  if (o.time < 1) throw ValidationError(path + ".time", "must be an integer >= 1");
  if (!std::isfinite(o.perf) || o.perf < 0.0 || o.perf > 1.0)
    throw ValidationError(path + ".perf", "must be in [0, 1]");
  if (!std::isfinite(o.energy) || o.energy < 0.0)
    throw ValidationError(path + ".energy", "must be finite and >= 0");
}

void validate_method(const MethodProfile& m, const std::string& path) {
  if (m.id.empty()) throw ValidationError(path + ".id", "must be non-empty");
  if (m.options.empty()) throw ValidationError(path + ".options", "must be non-empty");
  for (std::size_t i = 0; i < m.options.size(); ++i) {
    const std::string opath = index_path(path + ".options", i);
    validate_option(m.options[i], opath);
    if (i > 0 && m.options[i].time <= m.options[i - 1].time)
      throw ValidationError(opath + ".time", "option times must be strictly increasing");
    if (m.options[i].energy != m.options.front().energy)
      throw ValidationError(opath + ".energy",
                            "energy must be constant across a method's options");
  }
}

}  // namespace

void validate_problem(const RouteProblem& p) {
  if (p.nodes.empty()) throw ValidationError("nodes", "must be non-empty");
  std::set<std::string> node_ids;
  for (std::size_t n = 0; n < p.nodes.size(); ++n) {
    const NodeSpec& node = p.nodes[n];
    const std::string npath = index_path("nodes", n);
    if (node.id.empty()) throw ValidationError(npath + ".id", "must be non-empty");
    if (!node_ids.insert(node.id).second)
      throw ValidationError(npath + ".id", "duplicate node id '" + node.id + "'");
    if (node.methods.empty())
      throw ValidationError(npath + ".methods", "must be non-empty");
    std::set<std::string> method_ids;
    for (std::size_t m = 0; m < node.methods.size(); ++m) {
      const std::string mpath = index_path(npath + ".methods", m);
      validate_method(node.methods[m], mpath);
      if (!method_ids.insert(node.methods[m].id).second)
        throw ValidationError(mpath + ".id",
                              "duplicate method id '" + node.methods[m].id + "'");
    }
  }
  if (p.time_constraint < 1)
    throw ValidationError("time_constraint", "must be an integer >= 1");
  if (!std::isfinite(p.confidence) || p.confidence <= 0.0 || p.confidence > 1.0)
    throw ValidationError("confidence", "must be in (0, 1]");
}

}  // namespace cdp
