#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cdp/dp_solver.hpp"
#include "cdp/route_model.hpp"
#include "cdp/sim.hpp"

namespace cdp {
namespace io {

enum class ReportFormat { csv, jsonl };

// --- .problem documents (JSON) ---

/// Parses and fully validates a problem document. Syntax failures raise
/// ParseError with line/column; invariant violations raise ValidationError
/// with the offending field path. Round-trips through serialize_problem.
RouteProblem parse_problem(std::string_view text);

/// Canonical form: 2-space indent, keys sorted, integral energies printed
/// as integers. parse_problem(serialize_problem(p)) == p.
std::string serialize_problem(const RouteProblem& p);

// --- .scenario documents (JSON) ---

sim::Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const sim::Scenario& s);

// --- per-cloudlet statistics tables (plain text, rows as printed) ---

/// Parses "T (P,E) (P,E) ..." rows. Values are kept both as doubles and as
/// their source spelling so the table re-serializes digit for digit.
/// Latency indices above 1 are accepted. Raises ParseError only.
sim::StatsTable load_table3_stats(std::string_view text);
std::string serialize_table3(const sim::StatsTable& t);

// --- reports ---

std::string assignment_to_string(const std::vector<NodeChoice>& assignment);

/// Frontier table, one row per (time budget, frontier point). CSV prints
/// floating-point values with 6 significant digits; json-lines keeps exact
/// round-trip values.
std::string write_report(const std::vector<FrontierRow>& rows, ReportFormat format);

/// Per-device metrics rows. Same formatting contract as the frontier report.
std::string write_report(const sim::SimMetrics& metrics, ReportFormat format);

/// A single solution as one report row.
std::string solution_report(const RouteSolution& s, ReportFormat format);

// --- traces and metrics files ---

/// One JSON object per event, ordered by (tick, seq). Identical runs yield
/// byte-identical documents.
std::string trace_to_jsonl(const sim::Trace& trace);
sim::Trace parse_trace_jsonl(std::string_view text);

/// Device lines followed by one aggregate line. Values round-trip exactly.
std::string metrics_to_jsonl(const sim::SimMetrics& metrics);

// --- files ---

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace io
}  // namespace cdp
