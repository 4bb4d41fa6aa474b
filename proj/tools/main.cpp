// cloudletdp: energy-aware cloudlet route solver and simulator.
//
// Subcommands:
//   solve     dynamic-programming route selection on a .problem file
//   oracle    brute-force reference on the same inputs
//   simulate  one deterministic simulation run, writing trace + metrics
//   compare   seeded A/B comparison of the cloudlet policy vs direct-to-cloud

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdp/dp_solver.hpp"
#include "cdp/oracle.hpp"
#include "cdp/scenario_io.hpp"
#include "cdp/sim.hpp"

namespace {

int log_verbosity() {
  const char* env = std::getenv("CLOUDLET_DP_LOG");
  if (env == nullptr) return 0;
  const std::string value(env);
  if (value == "debug") return 2;
  if (value == "info") return 1;
  return 0;
}

void log_info(const std::string& message) {
  if (log_verbosity() >= 1) std::fprintf(stderr, "[cloudletdp] %s\n", message.c_str());
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string human_solution(const cdp::RouteSolution& s) {
  return "solution: energy=" + fmt12(s.achieved.energy) +
         " perf=" + fmt12(s.achieved.perf) + " time=" + std::to_string(s.time_used) +
         "\nroute: " + cdp::io::assignment_to_string(s.assignment);
}

cdp::io::ReportFormat report_format(const std::string& name) {
  return name == "json" ? cdp::io::ReportFormat::jsonl : cdp::io::ReportFormat::csv;
}

struct SolveOptions {
  std::string problem_path;
  std::optional<int> time;
  std::optional<double> confidence;
  bool full_frontier = false;
  std::string out_path;
  std::string format = "csv";
  bool format_given = false;
};

void add_solve_flags(CLI::App* cmd, SolveOptions& opts) {
  cmd->add_option("--problem", opts.problem_path, "problem file (.problem)")
      ->required();
  cmd->add_option("--time", opts.time, "override the file's time constraint");
  cmd->add_option("--confidence", opts.confidence,
                  "override the file's required confidence");
  cmd->add_flag("--full-frontier", opts.full_frontier,
                "emit the whole frontier table instead of one solution");
  cmd->add_option("--out", opts.out_path, "write the report to this file");
  cmd->add_option("--format", opts.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->each([&opts](const std::string&) { opts.format_given = true; });
}

int run_solve(const SolveOptions& opts, bool use_oracle) {
  cdp::RouteProblem problem =
      cdp::io::parse_problem(cdp::io::read_file(opts.problem_path));
  if (opts.time) problem.time_constraint = *opts.time;
  if (opts.confidence) problem.confidence = *opts.confidence;
  log_info(std::string(use_oracle ? "oracle" : "solve") + " on '" +
           opts.problem_path + "' T=" + std::to_string(problem.time_constraint) +
           " theta=" + fmt12(problem.confidence));

  const cdp::io::ReportFormat format = report_format(opts.format);
  if (opts.full_frontier) {
    const std::vector<cdp::FrontierRow> rows =
        use_oracle ? cdp::oracle::oracle_full_frontier(problem)
                   : cdp::full_frontier(problem);
    const std::string report = cdp::io::write_report(rows, format);
    if (!opts.out_path.empty()) {
      cdp::io::write_file(opts.out_path, report);
      std::cout << "frontier: " << rows.size() << " rows -> " << opts.out_path << "\n";
    } else {
      std::cout << report;
    }
    return 0;
  }

  const cdp::RouteSolution solution =
      use_oracle ? cdp::oracle::oracle_solve(problem) : cdp::solve(problem);
  std::cout << human_solution(solution) << "\n";
  if (!opts.out_path.empty()) {
    cdp::io::write_file(opts.out_path, cdp::io::solution_report(solution, format));
  } else if (opts.format_given) {
    std::cout << cdp::io::solution_report(solution, format);
  }
  return 0;
}

struct RunOutcome {
  cdp::sim::Policy policy;
  std::uint64_t seed;
  double energy;
  double p50;
  double p95;
  std::int64_t handoffs;
  std::int64_t infeasible;
  std::int64_t completed;
  std::int64_t failed;
};

RunOutcome summarize(const cdp::sim::SimMetrics& m, cdp::sim::Policy policy,
                     std::uint64_t seed) {
  const std::vector<double> merged = m.merged_latencies();
  return RunOutcome{policy,
                    seed,
                    m.total_energy(),
                    cdp::sim::percentile(merged, 0.50),
                    cdp::sim::percentile(merged, 0.95),
                    m.total_handoffs(),
                    m.infeasible_routes,
                    m.total_completed(),
                    m.total_failed()};
}

int run_simulate(const std::string& scenario_path, std::uint64_t seed,
                 const std::string& policy_name, const std::string& out_dir) {
  cdp::sim::Scenario scenario =
      cdp::io::parse_scenario(cdp::io::read_file(scenario_path));
  cdp::sim::Policy policy = scenario.policy;
  if (!policy_name.empty()) policy = *cdp::sim::policy_from_string(policy_name);

  const cdp::sim::SimResult result = cdp::sim::run_policy(scenario, policy, seed);

  const std::string stem = std::filesystem::path(scenario_path).stem().string();
  const std::string base = (std::filesystem::path(out_dir) /
                            (stem + "." + cdp::sim::to_string(policy) + ".seed" +
                             std::to_string(seed)))
                               .string();
  cdp::io::write_file(base + ".trace", cdp::io::trace_to_jsonl(result.trace));
  cdp::io::write_file(base + ".metrics.jsonl",
                      cdp::io::metrics_to_jsonl(result.metrics));

  const RunOutcome o = summarize(result.metrics, policy, seed);
  std::cout << "policy=" << cdp::sim::to_string(policy) << " seed=" << seed
            << " devices=" << result.metrics.devices.size()
            << " energy=" << fmt12(o.energy) << " completed=" << o.completed
            << " failed=" << o.failed << " handoffs=" << o.handoffs << "\n"
            << "wrote " << base << ".trace and " << base << ".metrics.jsonl\n";
  return 0;
}

int run_compare(const std::string& scenario_path, int seeds,
                const std::string& out_dir) {
  const cdp::sim::Scenario scenario =
      cdp::io::parse_scenario(cdp::io::read_file(scenario_path));

  struct Task {
    cdp::sim::Policy policy;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const cdp::sim::Policy policy :
       {cdp::sim::Policy::demccm, cdp::sim::Policy::direct})
    for (int s = 1; s <= seeds; ++s)
      tasks.push_back({policy, static_cast<std::uint64_t>(s)});

  // Runs are independent; order of completion never changes the output
  // because rows are assembled by task index.
  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(tasks.size());
  for (const Task& task : tasks)
    futures.push_back(std::async(std::launch::async, [&scenario, task] {
      const cdp::sim::SimResult r =
          cdp::sim::run_policy(scenario, task.policy, task.seed);
      return summarize(r.metrics, task.policy, task.seed);
    }));
  std::vector<RunOutcome> outcomes;
  outcomes.reserve(tasks.size());
  for (auto& f : futures) outcomes.push_back(f.get());

  std::string csv =
      "# seeded A/B simulation of policies demccm and direct on the same "
      "scenario;\n"
      "# the comparison is a property of this simulation model, not a "
      "reproduction of any published measurement.\n"
      "policy,seed,total_energy,latency_p50,latency_p95,handoffs,"
      "infeasible_routes,completed,failed\n";
  double mean_energy[2] = {0.0, 0.0};
  for (const RunOutcome& o : outcomes) {
    csv += cdp::sim::to_string(o.policy);
    csv += ',';
    csv += std::to_string(o.seed);
    csv += ',';
    csv += fmt6(o.energy);
    csv += ',';
    csv += fmt6(o.p50);
    csv += ',';
    csv += fmt6(o.p95);
    csv += ',';
    csv += std::to_string(o.handoffs);
    csv += ',';
    csv += std::to_string(o.infeasible);
    csv += ',';
    csv += std::to_string(o.completed);
    csv += ',';
    csv += std::to_string(o.failed);
    csv += '\n';
    mean_energy[o.policy == cdp::sim::Policy::demccm ? 0 : 1] += o.energy;
  }
  mean_energy[0] /= static_cast<double>(seeds);
  mean_energy[1] /= static_cast<double>(seeds);

  for (const cdp::sim::Policy policy :
       {cdp::sim::Policy::demccm, cdp::sim::Policy::direct}) {
    double energy_sum = 0.0, p50_sum = 0.0, p95_sum = 0.0;
    std::int64_t handoffs = 0, infeasible = 0, completed = 0, failed = 0;
    for (const RunOutcome& o : outcomes) {
      if (o.policy != policy) continue;
      energy_sum += o.energy;
      p50_sum += o.p50;
      p95_sum += o.p95;
      handoffs += o.handoffs;
      infeasible += o.infeasible;
      completed += o.completed;
      failed += o.failed;
    }
    const double n = static_cast<double>(seeds);
    csv += cdp::sim::to_string(policy);
    csv += ",mean,";
    csv += fmt6(energy_sum / n);
    csv += ',';
    csv += fmt6(p50_sum / n);
    csv += ',';
    csv += fmt6(p95_sum / n);
    csv += ',';
    csv += std::to_string(handoffs);
    csv += ',';
    csv += std::to_string(infeasible);
    csv += ',';
    csv += std::to_string(completed);
    csv += ',';
    csv += std::to_string(failed);
    csv += '\n';
  }

  const std::string stem = std::filesystem::path(scenario_path).stem().string();
  const std::string out_path =
      (std::filesystem::path(out_dir) / (stem + ".comparison.csv")).string();
  cdp::io::write_file(out_path, csv);

  std::cout << "mean total device energy over " << seeds
            << " seeds (model property, seeded A/B simulation):\n"
            << "  demccm: " << fmt12(mean_energy[0]) << "\n"
            << "  direct: " << fmt12(mean_energy[1]) << "\n"
            << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-aware cloudlet route solver and simulator"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a route problem");
  add_solve_flags(solve_cmd, solve_opts);

  SolveOptions oracle_opts;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "brute-force reference solver");
  add_solve_flags(oracle_cmd, oracle_opts);

  std::string scenario_path;
  std::uint64_t seed = 0;
  std::string policy_name;
  std::string out_dir = ".";
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one simulation");
  simulate_cmd->add_option("--scenario", scenario_path, "scenario file (.scenario)")
      ->required();
  simulate_cmd->add_option("--seed", seed, "random seed")->required();
  simulate_cmd->add_option("--policy", policy_name, "override the scenario policy")
      ->check(CLI::IsMember({"demccm", "direct"}));
  simulate_cmd->add_option("--out", out_dir, "output directory");

  std::string cmp_scenario;
  int cmp_seeds = 0;
  std::string cmp_out = ".";
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "A/B compare demccm vs direct over seeds");
  compare_cmd->add_option("--scenario", cmp_scenario, "scenario file (.scenario)")
      ->required();
  compare_cmd->add_option("--seeds", cmp_seeds, "number of seeds (1..N)")
      ->required()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--out", cmp_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_opts, false);
    if (oracle_cmd->parsed()) return run_solve(oracle_opts, true);
    if (simulate_cmd->parsed())
      return run_simulate(scenario_path, seed, policy_name, out_dir);
    if (compare_cmd->parsed()) return run_compare(cmp_scenario, cmp_seeds, cmp_out);
  } catch (const cdp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
