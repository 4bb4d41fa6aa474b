// Acceptance suite: one line of output per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses the bundled fixtures
// under data/.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "cdp/dp_solver.hpp"
#include "cdp/oracle.hpp"
#include "cdp/scenario_io.hpp"
#include "cdp/sim.hpp"
#include "support/test_util.hpp"

using namespace cdp;

namespace {

struct Outcome {
  bool passed;
  std::string note;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string data_file(const std::string& name) { return cdp_test::data_path(name); }

// --- criterion 1: dp-solver and oracle agree on randomized instances ------

Outcome criterion_oracle_equivalence() {
  const auto start = Clock::now();
  cdp_test::InstanceGen gen(20240601);
  const int instances = 1000;
  int feasible_checks = 0;
  for (int i = 0; i < instances; ++i) {
    RouteProblem p = gen.next();
    for (const double theta : {0.5, 0.7, 0.9}) {
      p.confidence = theta;
      bool dp_feasible = true, oracle_feasible = true;
      RouteSolution dp, reference;
      try {
        dp = solve(p);
      } catch (const NoFeasibleRoute&) {
        dp_feasible = false;
      }
      try {
        reference = oracle::oracle_solve(p);
      } catch (const NoFeasibleRoute&) {
        oracle_feasible = false;
      }
      if (dp_feasible != oracle_feasible)
        return {false, "feasibility mismatch on instance " + std::to_string(i)};
      if (!dp_feasible) continue;
      if (dp.achieved.energy != reference.achieved.energy)
        return {false, "energy mismatch on instance " + std::to_string(i)};
      if (std::abs(dp.achieved.perf - reference.achieved.perf) > 1e-12)
        return {false, "perf mismatch on instance " + std::to_string(i)};
      if (dp.assignment != reference.assignment)
        return {false, "assignment mismatch on instance " + std::to_string(i)};
      ++feasible_checks;
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0)
    return {false, "runtime " + std::to_string(elapsed) + "s exceeds 60s"};
  char note[160];
  std::snprintf(note, sizeof(note),
                "%d instances x 3 thetas, %d feasible agreements, %.1fs",
                instances, feasible_checks, elapsed);
  return {true, note};
}

// --- criterion 2: split semantics lower-bounds the exact probability ------

Outcome criterion_lower_bound() {
  const auto start = Clock::now();
  cdp_test::InstanceGen gen(20240601);  // the same instance stream as criterion 1
  long assignments = 0;
  for (int i = 0; i < 1000; ++i) {
    const RouteProblem p = gen.next();
    bool violated = false;
    oracle::for_each_assignment(p, [&](const std::vector<std::string>& methods) {
      const double split = oracle::best_split_perf(p, methods, p.time_constraint);
      const double exact = oracle::exact_probability(p, methods, p.time_constraint);
      if (split > exact + 1e-12) violated = true;
      ++assignments;
    });
    if (violated) return {false, "violation on instance " + std::to_string(i)};
  }
  char note[160];
  std::snprintf(note, sizeof(note), "%ld assignments checked, %.1fs", assignments,
                seconds_since(start));
  return {true, note};
}

// --- criterion 3: operator algebra on exhaustive grids --------------------

Outcome criterion_operator_algebra() {
  std::vector<PerfEnergy> grid;
  for (const double perf : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (int energy = 0; energy <= 4; ++energy)
      grid.push_back({perf, static_cast<double>(energy)});

  const PerfEnergy identity{1.0, 0.0};
  long checks = 0;
  for (const PerfEnergy& a : grid) {
    if (combine(a, identity) != a || combine(identity, a) != a)
      return {false, "identity violated"};
    for (const PerfEnergy& b : grid) {
      if (combine(a, b) != combine(b, a)) return {false, "commutativity violated"};
      for (const PerfEnergy& c : grid) {
        if (combine(combine(a, b), c) != combine(a, combine(b, c)))
          return {false, "associativity violated"};
        ++checks;
      }
    }
  }

  // prune: all subsets of size <= 3 of the grid, plus the whole grid.
  std::vector<std::vector<PerfEnergy>> sets;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sets.push_back({grid[i]});
    for (std::size_t j = i; j < grid.size(); ++j) {
      sets.push_back({grid[i], grid[j]});
      for (std::size_t k = j; k < grid.size(); ++k)
        sets.push_back({grid[i], grid[j], grid[k]});
    }
  }
  sets.push_back(grid);
  sets.push_back({});
  for (const auto& set : sets) {
    const std::vector<PerfEnergy> pruned = prune(set);
    if (prune(pruned) != pruned) return {false, "prune not idempotent"};
    for (std::size_t i = 0; i < pruned.size(); ++i)
      for (std::size_t j = 0; j < pruned.size(); ++j)
        if (dominates(pruned[i], pruned[j])) return {false, "antichain violated"};
    for (const PerfEnergy& p : set) {
      bool covered = false;
      for (const PerfEnergy& q : pruned)
        if (q == p || dominates(q, p)) covered = true;
      if (!covered) return {false, "pruned output does not cover the input"};
    }
    checks += static_cast<long>(set.size());
  }
  return {true, std::to_string(checks) + " grid checks, zero violations"};
}

// --- criterion 4: monotonicity in T and theta ------------------------------

Outcome criterion_monotonicity() {
  cdp_test::InstanceGen gen(777);
  for (int i = 0; i < 200; ++i) {
    RouteProblem p = gen.next();
    const int min_t = static_cast<int>(p.nodes.size());

    for (const double theta : {0.5, 0.7, 0.9}) {
      p.confidence = theta;
      bool was_feasible = false;
      double previous_energy = 0.0;
      for (int t = min_t; t <= 12; ++t) {
        p.time_constraint = t;
        try {
          const RouteSolution s = solve(p);
          if (was_feasible && s.achieved.energy > previous_energy)
            return {false, "energy increased with T on instance " + std::to_string(i)};
          previous_energy = s.achieved.energy;
          was_feasible = true;
        } catch (const NoFeasibleRoute&) {
          if (was_feasible)
            return {false, "feasibility lost with larger T on instance " +
                               std::to_string(i)};
        }
      }
    }

    p.time_constraint = 12;
    bool lower_was_feasible = false;
    double lower_energy = 0.0;
    for (const double theta : {0.5, 0.7, 0.9}) {
      p.confidence = theta;
      try {
        const RouteSolution s = solve(p);
        if (lower_was_feasible && s.achieved.energy < lower_energy)
          return {false, "energy decreased with theta on instance " + std::to_string(i)};
        lower_energy = s.achieved.energy;
        lower_was_feasible = true;
      } catch (const NoFeasibleRoute&) {
        // Higher thetas may be infeasible; that is fine and final.
        break;
      }
    }
  }
  return {true, "200 instances, zero violations"};
}

// --- criterion 5: the Table 4 fixture, byte fidelity and golden frontier ---

Outcome criterion_table4_fixture() {
  const std::string text = io::read_file(data_file("table4.problem"));
  const RouteProblem p = io::parse_problem(text);

  // Printed values, exactly as in the source table.
  const struct {
    const char* node;
    int t[2][2];
    double perf[2][2];
    double energy[2];
  } rows[] = {
      {"0", {{1, 2}, {2, 3}}, {{0.7, 0.1}, {0.6, 0.2}}, {7, 6}},
      {"1", {{1, 2}, {2, 3}}, {{0.8, 0.3}, {0.7, 0.3}}, {6, 3}},
      {"2", {{1, 3}, {2, 4}}, {{0.8, 0.2}, {0.8, 0.2}}, {9, 4}},
      {"3", {{2, 3}, {5, 7}}, {{0.7, 0.3}, {0.8, 0.3}}, {8, 5}},
      {"4", {{2, 5}, {4, 5}}, {{0.6, 0.4}, {0.8, 0.2}}, {7, 6}},
      {"5", {{1, 3}, {2, 4}}, {{0.7, 0.3}, {0.7, 0.3}}, {8, 2}},
      {"7", {{1, 4}, {3, 5}}, {{0.8, 0.4}, {0.8, 0.2}}, {6, 3}},
  };
  if (p.nodes.size() != 7) return {false, "expected 7 nodes"};
  for (std::size_t n = 0; n < 7; ++n) {
    if (p.nodes[n].id != rows[n].node) return {false, "node id mismatch"};
    if (p.nodes[n].methods.size() != 2) return {false, "expected 2 methods per node"};
    for (int m = 0; m < 2; ++m) {
      const MethodProfile& method = p.nodes[n].methods[static_cast<std::size_t>(m)];
      if (method.id != (m == 0 ? "M1" : "M2")) return {false, "method id mismatch"};
      if (method.options.size() != 2) return {false, "expected 2 options per method"};
      for (int o = 0; o < 2; ++o) {
        const ExecutionOption& opt = method.options[static_cast<std::size_t>(o)];
        if (opt.time != rows[n].t[m][o] || opt.perf != rows[n].perf[m][o] ||
            opt.energy != rows[n].energy[m])
          return {false, "option values differ from the printed table at node " +
                             std::string(rows[n].node)};
      }
    }
  }

  if (io::serialize_problem(p) != text)
    return {false, "re-serialization is not byte-identical"};

  // solve and oracle agree for every T in [7, 25] and theta in {.5, .7, .9}.
  int agreements = 0;
  for (int t = 7; t <= 25; ++t) {
    for (const double theta : {0.5, 0.7, 0.9}) {
      RouteProblem q = p;
      q.time_constraint = t;
      q.confidence = theta;
      bool dp_feasible = true, oracle_feasible = true;
      RouteSolution dp, reference;
      try {
        dp = solve(q);
      } catch (const NoFeasibleRoute&) {
        dp_feasible = false;
      }
      try {
        reference = oracle::oracle_solve(q);
      } catch (const NoFeasibleRoute&) {
        oracle_feasible = false;
      }
      if (dp_feasible != oracle_feasible)
        return {false, "feasibility disagreement at T=" + std::to_string(t)};
      if (dp_feasible &&
          (dp.achieved.energy != reference.achieved.energy ||
           dp.achieved.perf != reference.achieved.perf ||
           dp.assignment != reference.assignment))
        return {false, "solution disagreement at T=" + std::to_string(t)};
      ++agreements;
    }
  }

  // The committed golden frontier was produced by the oracle; the solver
  // must reproduce it byte for byte, and the oracle must still match it.
  const std::string golden = io::read_file(data_file("golden/table4_frontier.csv"));
  const std::string dp_table = io::write_report(full_frontier(p), io::ReportFormat::csv);
  if (dp_table != golden) return {false, "dp frontier differs from the golden table"};
  const std::string oracle_table =
      io::write_report(oracle::oracle_full_frontier(p), io::ReportFormat::csv);
  if (oracle_table != golden)
    return {false, "oracle frontier differs from the golden table"};

  return {true, "values, bytes, golden table, and " + std::to_string(agreements) +
                    " (T, theta) agreements"};
}

// --- criterion 6: simulation determinism ----------------------------------

Outcome criterion_determinism() {
  const char* names[] = {"unstable.scenario", "static.scenario", "mobility.scenario"};
  const auto tmp = std::filesystem::temp_directory_path() / "cdp_acceptance_det";
  std::filesystem::remove_all(tmp);
  int comparisons = 0;
  for (const char* name : names) {
    const sim::Scenario s =
        io::parse_scenario(io::read_file(data_file("scenarios/" + std::string(name))));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const sim::SimResult a = sim::run(s, seed);
      const sim::SimResult b = sim::run(s, seed);
      const std::string stem = (tmp / (std::string(name) + std::to_string(seed))).string();
      io::write_file(stem + ".a.trace", io::trace_to_jsonl(a.trace));
      io::write_file(stem + ".b.trace", io::trace_to_jsonl(b.trace));
      io::write_file(stem + ".a.metrics.jsonl", io::metrics_to_jsonl(a.metrics));
      io::write_file(stem + ".b.metrics.jsonl", io::metrics_to_jsonl(b.metrics));
      if (io::read_file(stem + ".a.trace") != io::read_file(stem + ".b.trace"))
        return {false, std::string(name) + " seed " + std::to_string(seed) +
                           ": traces differ"};
      if (io::read_file(stem + ".a.metrics.jsonl") !=
          io::read_file(stem + ".b.metrics.jsonl"))
        return {false, std::string(name) + " seed " + std::to_string(seed) +
                           ": metrics differ"};
      ++comparisons;
    }
  }
  std::filesystem::remove_all(tmp);
  return {true, std::to_string(comparisons) + " scenario/seed pairs byte-identical"};
}

// --- criterion 7: energy conservation under trace replay ------------------

Outcome criterion_energy_conservation() {
  const char* names[] = {"unstable.scenario", "static.scenario", "mobility.scenario"};
  int devices_checked = 0;
  for (const char* name : names) {
    const sim::Scenario s =
        io::parse_scenario(io::read_file(data_file("scenarios/" + std::string(name))));
    for (const sim::Policy policy : {sim::Policy::demccm, sim::Policy::direct}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const sim::SimResult r = sim::run_policy(s, policy, seed);
        // Replay through the serialized form, as a file consumer would.
        const sim::Trace replayed_trace =
            io::parse_trace_jsonl(io::trace_to_jsonl(r.trace));
        const auto totals = sim::replay_device_energy(replayed_trace);
        if (totals.size() != r.metrics.devices.size())
          return {false, "device set mismatch in replay"};
        for (const auto& [id, m] : r.metrics.devices) {
          const auto it = totals.find(id);
          if (it == totals.end() || it->second != m.energy)
            return {false, std::string(name) + ": replay diverges for device " + id};
          ++devices_checked;
        }
      }
    }
  }
  return {true, std::to_string(devices_checked) + " device totals replayed exactly"};
}

// --- criterion 8: policy comparison on the unstable scenario --------------

Outcome criterion_policy_comparison() {
  const auto start = Clock::now();
  const sim::Scenario s =
      io::parse_scenario(io::read_file(data_file("scenarios/unstable.scenario")));
  const int seeds = 20;
  double demccm_total = 0.0, direct_total = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    demccm_total +=
        sim::run_policy(s, sim::Policy::demccm, static_cast<std::uint64_t>(seed))
            .metrics.total_energy();
    direct_total +=
        sim::baseline_direct_to_cloud(s, static_cast<std::uint64_t>(seed))
            .metrics.total_energy();
  }
  const double demccm_mean = demccm_total / seeds;
  const double direct_mean = direct_total / seeds;
  const double elapsed = seconds_since(start);
  if (elapsed >= 120.0)
    return {false, "runtime " + std::to_string(elapsed) + "s exceeds 120s"};
  char note[240];
  std::snprintf(note, sizeof(note),
                "mean device energy over %d seeds: demccm %.1f <= direct %.1f "
                "(model property of the seeded A/B simulation, not a published "
                "measurement), %.1fs",
                seeds, demccm_mean, direct_mean, elapsed);
  if (demccm_mean > direct_mean) return {false, note};
  return {true, note};
}

// --- criterion 9: handoff stability in the static scenario ----------------

Outcome criterion_handoff_stability() {
  const sim::Scenario s =
      io::parse_scenario(io::read_file(data_file("scenarios/static.scenario")));
  long handoffs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const sim::SimResult r = sim::run(s, seed);
    for (const auto& [id, m] : r.metrics.devices) {
      if (m.handoffs > 1)
        return {false, "device " + id + " handed off " + std::to_string(m.handoffs) +
                           " times at seed " + std::to_string(seed)};
      handoffs += m.handoffs;
    }
  }
  return {true, "max one handoff per device over 10 seeds (" +
                    std::to_string(handoffs) + " total)"};
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    Outcome (*run)();
  } criteria[] = {
      {1, "oracle equivalence", criterion_oracle_equivalence},
      {2, "split-semantics lower bound", criterion_lower_bound},
      {3, "operator algebra", criterion_operator_algebra},
      {4, "monotonicity", criterion_monotonicity},
      {5, "table4 fixture and golden frontier", criterion_table4_fixture},
      {6, "simulation determinism", criterion_determinism},
      {7, "energy conservation", criterion_energy_conservation},
      {8, "policy comparison", criterion_policy_comparison},
      {9, "handoff stability", criterion_handoff_stability},
  };

  bool all_passed = true;
  for (const auto& c : criteria) {
    Outcome outcome{false, "unexpected exception"};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d (%s): %s - %s\n", c.id, c.name,
                outcome.passed ? "PASS" : "FAIL", outcome.note.c_str());
    std::fflush(stdout);
    all_passed = all_passed && outcome.passed;
  }
  return all_passed ? 0 : 1;
}
