#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdp/route_model.hpp"

namespace cdp {
namespace sim {

// ---------------------------------------------------------------------------
// World description (scenario)
// ---------------------------------------------------------------------------

struct Vec2 {
  double x{0.0};
  double y{0.0};

  bool operator==(const Vec2&) const = default;
};

double distance(const Vec2& a, const Vec2& b);

enum class RadioState { searching, idle, transmitting, receiving };

const char* to_string(RadioState s);

/// Device radio power draw per state, in energy units per tick.
struct PowerTable {
  double searching{2.0};
  double idle{0.1};
  double transmitting{1.5};
  double receiving{1.0};

  double of(RadioState s) const;
  bool operator==(const PowerTable&) const = default;
};

struct LinkModel {
  enum class Kind { wifi, cellular };

  std::string id;
  Kind kind{Kind::wifi};
  double bandwidth{1.0};      // payload units per tick
  int base_latency{0};        // ticks
  double per_unit_cost{0.0};  // monetary units per payload unit (cellular)
  double stability{1.0};      // probability per tick that the link stays up

  bool operator==(const LinkModel&) const = default;
};

struct Waypoint {
  std::int64_t tick{0};
  Vec2 position;

  bool operator==(const Waypoint&) const = default;
};

struct DeviceSpec {
  std::string id;
  Vec2 position;
  std::string link_id;
  PowerTable power;
  std::int64_t request_period{20};
  double input_size{10.0};
  double response_size{1.0};
  bool offload_enabled{true};
  bool partitionable{true};
  double capability{1.0};
  int local_estimate_ticks{20};
  std::vector<Waypoint> waypoints;  // scripted path; device holds position before/after

  bool operator==(const DeviceSpec&) const = default;
};

/// One cloudlet-to-cloud-server path description.
struct RouteSpec {
  std::string cloud_server_id;
  RouteProblem problem;

  bool operator==(const RouteSpec&) const = default;
};

/// Statistics table in the shape of a per-cloudlet (latency index, energy)
/// grid keyed by time row. Latency indices above 1 are legal here; they are
/// never interpreted as probabilities.
struct StatsPair {
  double perf_index{0.0};
  double energy{0.0};
  std::string perf_text;    // source spelling, kept for byte-faithful output
  std::string energy_text;

  bool operator==(const StatsPair& o) const {
    return perf_index == o.perf_index && energy == o.energy;
  }
};

struct StatsRow {
  int time{0};
  std::vector<StatsPair> pairs;

  bool operator==(const StatsRow&) const = default;
};

struct StatsTable {
  std::vector<StatsRow> rows;

  bool empty() const { return rows.empty(); }
  double mean_perf_index() const;
  double mean_energy() const;
  bool operator==(const StatsTable&) const = default;
};

/// A cloudlet is parameterized either by explicit route problems (solved by
/// the dynamic program at scenario load) or by a statistics table.
struct CloudletSpec {
  std::string id;
  Vec2 position;
  std::vector<RouteSpec> routes;
  StatsTable stats;
  double service_scale{10.0};  // ticks per unit of mean latency index

  bool operator==(const CloudletSpec&) const = default;
};

struct CloudServerSpec {
  std::string id;
  Vec2 position;
  int service_ticks{5};

  bool operator==(const CloudServerSpec&) const = default;
};

enum class Policy { demccm, direct };

const char* to_string(Policy p);
std::optional<Policy> policy_from_string(const std::string& name);

struct CostWeights {
  double energy{0.5};
  double latency{0.5};

  bool operator==(const CostWeights&) const = default;
};

struct Scenario {
  int schema_version{1};
  Policy policy{Policy::demccm};
  std::int64_t horizon{100};
  double hysteresis{0.1};
  CostWeights cost_weights;
  double latency_per_distance{0.05};  // propagation ticks per distance unit
  std::int64_t reconnect_ticks{5};    // searching period after a link failure
  std::int64_t handoff_period{10};    // ticks between handoff checks (0 = never)
  std::vector<LinkModel> links;
  std::vector<DeviceSpec> devices;
  std::vector<CloudletSpec> cloudlets;
  std::vector<CloudServerSpec> cloud_servers;

  bool operator==(const Scenario&) const = default;
};

/// Structural validation; throws InvalidScenario naming the defect.
void validate_scenario(const Scenario& s);

// ---------------------------------------------------------------------------
// Runtime state, metrics and trace
// ---------------------------------------------------------------------------

/// Live state of one device, as visible in the trace.
struct DeviceState {
  std::string id;
  Vec2 position;
  RadioState radio_state{RadioState::searching};
  std::optional<std::string> attached_cloudlet;
  double energy_used{0.0};
};

/// Live state of one cloudlet: its position plus the cached outcome of its
/// route problems (minimum-energy route, or the statistics-derived figures).
struct CloudletState {
  std::string id;
  Vec2 position;
  bool has_route{false};
  double route_energy{0.0};
  int service_ticks{1};
  int load{0};  // requests currently in service
};

struct TraceEvent {
  std::int64_t tick{0};
  std::uint64_t seq{0};
  std::string type;
  std::string device;
  std::string cloudlet;
  std::string detail;
  double value{0.0};
  double total{0.0};
  bool has_value{false};
  bool has_total{false};

  bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

struct DeviceMetrics {
  double energy{0.0};
  double energy_searching{0.0};
  double energy_idle{0.0};
  double energy_transmitting{0.0};
  double energy_receiving{0.0};
  std::int64_t issued{0};
  std::int64_t completed{0};
  std::int64_t failed{0};
  std::int64_t local{0};
  std::int64_t handoffs{0};
  std::vector<double> latency_samples;  // completion order

  bool operator==(const DeviceMetrics&) const = default;
};

struct SimMetrics {
  std::string policy;
  std::uint64_t seed{0};
  std::map<std::string, DeviceMetrics> devices;
  std::int64_t infeasible_routes{0};

  double total_energy() const;
  std::int64_t total_handoffs() const;
  std::int64_t total_completed() const;
  std::int64_t total_failed() const;
  std::int64_t total_issued() const;
  std::int64_t total_local() const;
  /// All latency samples merged in device-id order, sorted ascending.
  std::vector<double> merged_latencies() const;

  bool operator==(const SimMetrics&) const = default;
};

/// Nearest-rank percentile of a sorted ascending sample set; 0 when empty.
double percentile(const std::vector<double>& sorted, double q);

struct SimResult {
  SimMetrics metrics;
  Trace trace;
};

// ---------------------------------------------------------------------------
// Pure decision helpers (also used inside the engine)
// ---------------------------------------------------------------------------

/// Id of the cloudlet nearest to the device (Euclidean); ties break toward
/// the smallest id. Requires a non-empty list.
std::string nearest_cloudlet(const DeviceState& d,
                             const std::vector<CloudletState>& cloudlets);

/// Blended attachment cost: route energy and distance-proportional latency.
/// Cloudlets without a feasible route cost +infinity.
double predicted_cost(const Vec2& device_position, const CloudletState& cloudlet,
                      const CostWeights& weights, double latency_per_distance);

/// Returns the best candidate whose predicted cost beats the current
/// cloudlet's by more than the hysteresis fraction, if any.
std::optional<std::string> handoff_check(const DeviceState& d,
                                         const CloudletState& current,
                                         const std::vector<CloudletState>& candidates,
                                         double hysteresis,
                                         const CostWeights& weights,
                                         double latency_per_distance);

struct AppModel {
  double input_size{0.0};
  bool partitionable{true};
  int local_estimate_ticks{1};
};

/// Offload unless the user disabled it, the app cannot be partitioned, or
/// shipping the input would take longer than running locally.
bool offload_decision(bool user_pref_enabled, const LinkModel& link,
                      double device_capability, const AppModel& app);

/// Linear radio energy model: power(state) x duration.
double device_energy_step(RadioState state, std::int64_t duration,
                          const PowerTable& power);

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

/// Runs the discrete-event simulation under the scenario's policy. Output is
/// a pure function of (scenario, seed): the trace is totally ordered by
/// (tick, seq) and the metrics can be reproduced from it by replay.
SimResult run(const Scenario& s, std::uint64_t seed);

/// As run(), with the scenario's policy overridden.
SimResult run_policy(const Scenario& s, Policy policy, std::uint64_t seed);

/// The comparison baseline: devices bypass cloudlets and hold a direct cloud
/// connection until the link fails, then search and reconnect.
SimResult baseline_direct_to_cloud(const Scenario& s, std::uint64_t seed);

/// Sums energy deltas per device from a trace. Run totals must match this
/// exactly.
std::map<std::string, double> replay_device_energy(const Trace& trace);

}  // namespace sim
}  // namespace cdp
