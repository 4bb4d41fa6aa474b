#include "cdp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cdp/dp_solver.hpp"
#include "cdp/rng.hpp"

namespace cdp {
namespace sim {

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

double distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

const char* to_string(RadioState s) {
  switch (s) {
    case RadioState::searching: return "searching";
    case RadioState::idle: return "idle";
    case RadioState::transmitting: return "transmitting";
    case RadioState::receiving: return "receiving";
  }
  return "?";
}

double PowerTable::of(RadioState s) const {
  switch (s) {
    case RadioState::searching: return searching;
    case RadioState::idle: return idle;
    case RadioState::transmitting: return transmitting;
    case RadioState::receiving: return receiving;
  }
  return 0.0;
}

const char* to_string(Policy p) {
  return p == Policy::demccm ? "demccm" : "direct";
}

std::optional<Policy> policy_from_string(const std::string& name) {
  if (name == "demccm") return Policy::demccm;
  if (name == "direct") return Policy::direct;
  return std::nullopt;
}

double StatsTable::mean_perf_index() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const StatsRow& row : rows)
    for (const StatsPair& p : row.pairs) {
      sum += p.perf_index;
      ++count;
    }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double StatsTable::mean_energy() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const StatsRow& row : rows)
    for (const StatsPair& p : row.pairs) {
      sum += p.energy;
      ++count;
    }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double SimMetrics::total_energy() const {
  double sum = 0.0;
  for (const auto& [id, m] : devices) sum += m.energy;
  return sum;
}

std::int64_t SimMetrics::total_handoffs() const {
  std::int64_t n = 0;
  for (const auto& [id, m] : devices) n += m.handoffs;
  return n;
}

std::int64_t SimMetrics::total_completed() const {
  std::int64_t n = 0;
  for (const auto& [id, m] : devices) n += m.completed;
  return n;
}

std::int64_t SimMetrics::total_failed() const {
  std::int64_t n = 0;
  for (const auto& [id, m] : devices) n += m.failed;
  return n;
}

std::int64_t SimMetrics::total_issued() const {
  std::int64_t n = 0;
  for (const auto& [id, m] : devices) n += m.issued;
  return n;
}

std::int64_t SimMetrics::total_local() const {
  std::int64_t n = 0;
  for (const auto& [id, m] : devices) n += m.local;
  return n;
}

std::vector<double> SimMetrics::merged_latencies() const {
  std::vector<double> all;
  for (const auto& [id, m] : devices)
    all.insert(all.end(), m.latency_samples.begin(), m.latency_samples.end());
  std::sort(all.begin(), all.end());
  return all;
}

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double rank = std::ceil(q * static_cast<double>(sorted.size()));
  auto idx = static_cast<std::size_t>(std::max(1.0, rank)) - 1;
  idx = std::min(idx, sorted.size() - 1);
  return sorted[idx];
}

// ---------------------------------------------------------------------------
// Scenario validation
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void invalid(const std::string& what) { throw InvalidScenario(what); }

template <typename T>
void check_unique_ids(const std::vector<T>& items, const std::string& kind) {
  std::set<std::string> seen;
  for (const T& item : items) {
    if (item.id.empty()) invalid(kind + " id must be non-empty");
    if (!seen.insert(item.id).second)
      invalid("duplicate " + kind + " id '" + item.id + "'");
  }
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.horizon < 1) invalid("horizon must be >= 1");
  if (!(s.hysteresis >= 0.0) || !std::isfinite(s.hysteresis))
    invalid("hysteresis must be finite and >= 0");
  if (s.cost_weights.energy < 0.0 || s.cost_weights.latency < 0.0)
    invalid("cost weights must be >= 0");
  if (s.latency_per_distance < 0.0) invalid("latency_per_distance must be >= 0");
  if (s.reconnect_ticks < 1) invalid("reconnect_ticks must be >= 1");
  if (s.handoff_period < 0) invalid("handoff_period must be >= 0");

  check_unique_ids(s.links, "link");
  check_unique_ids(s.devices, "device");
  check_unique_ids(s.cloudlets, "cloudlet");
  check_unique_ids(s.cloud_servers, "cloud server");

  std::set<std::string> link_ids;
  for (const LinkModel& l : s.links) {
    if (l.bandwidth <= 0.0) invalid("link '" + l.id + "': bandwidth must be > 0");
    if (l.base_latency < 0) invalid("link '" + l.id + "': base_latency must be >= 0");
    if (!(l.stability > 0.0) || l.stability > 1.0)
      invalid("link '" + l.id + "': stability must be in (0, 1]");
    if (l.per_unit_cost < 0.0) invalid("link '" + l.id + "': per_unit_cost must be >= 0");
    link_ids.insert(l.id);
  }

  for (const DeviceSpec& d : s.devices) {
    if (!link_ids.count(d.link_id))
      invalid("device '" + d.id + "': unknown link '" + d.link_id + "'");
    if (d.request_period < 1) invalid("device '" + d.id + "': request_period must be >= 1");
    if (d.input_size < 0.0 || d.response_size < 0.0)
      invalid("device '" + d.id + "': payload sizes must be >= 0");
    if (!(d.capability > 0.0)) invalid("device '" + d.id + "': capability must be > 0");
    if (d.local_estimate_ticks < 1)
      invalid("device '" + d.id + "': local_estimate_ticks must be >= 1");
    for (const double p : {d.power.searching, d.power.idle, d.power.transmitting,
                           d.power.receiving})
      if (!(p > 0.0)) invalid("device '" + d.id + "': power values must be > 0");
    for (std::size_t i = 0; i < d.waypoints.size(); ++i) {
      if (d.waypoints[i].tick < 1)
        invalid("device '" + d.id + "': waypoint ticks must be >= 1");
      if (i > 0 && d.waypoints[i].tick <= d.waypoints[i - 1].tick)
        invalid("device '" + d.id + "': waypoint ticks must be strictly increasing");
    }
  }

  std::set<std::string> cloud_ids;
  for (const CloudServerSpec& c : s.cloud_servers) {
    if (c.service_ticks < 1)
      invalid("cloud server '" + c.id + "': service_ticks must be >= 1");
    cloud_ids.insert(c.id);
  }

  for (const CloudletSpec& c : s.cloudlets) {
    const bool has_routes = !c.routes.empty();
    const bool has_stats = !c.stats.empty();
    if (has_routes == has_stats)
      invalid("cloudlet '" + c.id + "': exactly one of routes or stats is required");
    if (has_stats && !(c.service_scale > 0.0))
      invalid("cloudlet '" + c.id + "': service_scale must be > 0");
    std::set<std::string> targets;
    for (const RouteSpec& r : c.routes) {
      if (!cloud_ids.count(r.cloud_server_id))
        invalid("cloudlet '" + c.id + "': unknown cloud server '" + r.cloud_server_id + "'");
      if (!targets.insert(r.cloud_server_id).second)
        invalid("cloudlet '" + c.id + "': duplicate route to '" + r.cloud_server_id + "'");
      try {
        validate_problem(r.problem);
      } catch (const ValidationError& e) {
        invalid("cloudlet '" + c.id + "' route to '" + r.cloud_server_id +
                "': " + e.what());
      }
    }
  }

  if (!s.devices.empty()) {
    if (s.policy == Policy::demccm && s.cloudlets.empty())
      invalid("policy demccm requires at least one cloudlet");
    if (s.cloud_servers.empty())
      invalid("at least one cloud server is required");
  }
}

// ---------------------------------------------------------------------------
// Pure decision helpers
// ---------------------------------------------------------------------------

std::string nearest_cloudlet(const DeviceState& d,
                             const std::vector<CloudletState>& cloudlets) {
  const CloudletState* best = nullptr;
  double best_distance = 0.0;
  for (const CloudletState& c : cloudlets) {
    const double dist = distance(d.position, c.position);
    if (best == nullptr || dist < best_distance ||
        (dist == best_distance && c.id < best->id)) {
      best = &c;
      best_distance = dist;
    }
  }
  if (best == nullptr) invalid("nearest_cloudlet: no cloudlets");
  return best->id;
}

double predicted_cost(const Vec2& device_position, const CloudletState& cloudlet,
                      const CostWeights& weights, double latency_per_distance) {
  if (!cloudlet.has_route) return std::numeric_limits<double>::infinity();
  const double latency = latency_per_distance * distance(device_position, cloudlet.position);
  return weights.energy * cloudlet.route_energy + weights.latency * latency;
}

std::optional<std::string> handoff_check(const DeviceState& d,
                                         const CloudletState& current,
                                         const std::vector<CloudletState>& candidates,
                                         double hysteresis,
                                         const CostWeights& weights,
                                         double latency_per_distance) {
  const double threshold =
      predicted_cost(d.position, current, weights, latency_per_distance) *
      (1.0 - hysteresis);
  const CloudletState* best = nullptr;
  double best_cost = 0.0;
  for (const CloudletState& c : candidates) {
    if (c.id == current.id) continue;
    const double cost = predicted_cost(d.position, c, weights, latency_per_distance);
    if (cost >= threshold) continue;
    if (best == nullptr || cost < best_cost ||
        (cost == best_cost && c.id < best->id)) {
      best = &c;
      best_cost = cost;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->id;
}

bool offload_decision(bool user_pref_enabled, const LinkModel& link,
                      double device_capability, const AppModel& app) {
  if (!user_pref_enabled || !app.partitionable) return false;
  const double transfer_time =
      app.input_size / link.bandwidth + static_cast<double>(link.base_latency);
  const double local_time =
      static_cast<double>(app.local_estimate_ticks) / device_capability;
  return transfer_time <= local_time;
}

double device_energy_step(RadioState state, std::int64_t duration,
                          const PowerTable& power) {
  return power.of(state) * static_cast<double>(duration);
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

namespace {

struct EngineDevice {
  const DeviceSpec* spec;
  const LinkModel* link;
  SplitMix64 rng;
  Vec2 position;
  RadioState state{RadioState::searching};
  int attached{-1};  // index into the policy's attachment targets
  std::int64_t search_until{0};

  enum class Phase { none, tx, wait, rx };
  Phase phase{Phase::none};
  std::int64_t phase_end{0};
  std::int64_t issue_tick{0};
  int service_target{-1};  // cloudlet index while a request holds its slot

  DeviceMetrics metrics{};
};

class Engine {
 public:
  Engine(const Scenario& s, Policy policy, std::uint64_t seed)
      : scenario_(s), policy_(policy), seed_(seed) {}

  SimResult run() {
    init();
    for (std::int64_t tick = 0; tick < scenario_.horizon; ++tick)
      for (EngineDevice& dev : devices_) step(dev, tick);
    return finish();
  }

 private:
  void init() {
    for (const CloudletSpec& spec : scenario_.cloudlets)
      cloudlets_.push_back(make_cloudlet_state(spec));
    std::sort(cloudlets_.begin(), cloudlets_.end(),
              [](const CloudletState& a, const CloudletState& b) { return a.id < b.id; });

    clouds_ = scenario_.cloud_servers;
    std::sort(clouds_.begin(), clouds_.end(),
              [](const CloudServerSpec& a, const CloudServerSpec& b) { return a.id < b.id; });

    std::vector<const DeviceSpec*> specs;
    for (const DeviceSpec& d : scenario_.devices) specs.push_back(&d);
    std::sort(specs.begin(), specs.end(),
              [](const DeviceSpec* a, const DeviceSpec* b) { return a->id < b->id; });
    for (const DeviceSpec* spec : specs) {
      devices_.push_back(EngineDevice{.spec = spec,
                                      .link = link_for(spec->link_id),
                                      .rng = SplitMix64(stream_seed(seed_, spec->id)),
                                      .position = spec->position});
    }
  }

  CloudletState make_cloudlet_state(const CloudletSpec& spec) {
    CloudletState state;
    state.id = spec.id;
    state.position = spec.position;
    if (!spec.stats.empty()) {
      state.has_route = true;
      state.route_energy = spec.stats.mean_energy();
      state.service_ticks = static_cast<int>(std::max<long>(
          1, std::lround(spec.stats.mean_perf_index() * spec.service_scale)));
      return state;
    }
    // Solve each cloudlet-to-cloud route; keep the cheapest feasible one.
    // The solver only needs to run for the cloudlet policy.
    if (policy_ != Policy::demccm) return state;
    bool found = false;
    RouteSolution best;
    std::string best_target;
    for (const RouteSpec& route : spec.routes) {
      try {
        RouteSolution sol = solve(route.problem);
        if (!found || sol.achieved.energy < best.achieved.energy ||
            (sol.achieved.energy == best.achieved.energy &&
             route.cloud_server_id < best_target)) {
          best = std::move(sol);
          best_target = route.cloud_server_id;
          found = true;
        }
      } catch (const Error&) {
        // Infeasible route; the cloudlet may still have another one.
      }
    }
    if (found) {
      state.has_route = true;
      state.route_energy = best.achieved.energy;
      state.service_ticks = std::max(1, best.time_used);
    }
    return state;
  }

  const LinkModel* link_for(const std::string& id) const {
    for (const LinkModel& l : scenario_.links)
      if (l.id == id) return &l;
    invalid("unknown link '" + id + "'");
  }

  // --- per-tick device logic ---

  void step(EngineDevice& dev, std::int64_t tick) {
    update_position(dev, tick);
    const double draw = dev.rng.uniform01();

    if (dev.attached >= 0 && draw < 1.0 - dev.link->stability) {
      on_link_failure(dev, tick);
    } else {
      advance_phase(dev, tick);
      maybe_attach(dev, tick);
      maybe_issue_request(dev, tick);
      maybe_handoff(dev, tick);
    }

    const double delta = device_energy_step(dev.state, 1, dev.spec->power);
    dev.metrics.energy += delta;
    switch (dev.state) {
      case RadioState::searching: dev.metrics.energy_searching += delta; break;
      case RadioState::idle: dev.metrics.energy_idle += delta; break;
      case RadioState::transmitting: dev.metrics.energy_transmitting += delta; break;
      case RadioState::receiving: dev.metrics.energy_receiving += delta; break;
    }
    TraceEvent e = make_event(tick, "energy", dev.spec->id);
    e.detail = to_string(dev.state);
    e.value = delta;
    e.total = dev.metrics.energy;
    e.has_value = e.has_total = true;
    trace_.push_back(std::move(e));
  }

  void update_position(EngineDevice& dev, std::int64_t tick) {
    const auto& wps = dev.spec->waypoints;
    if (wps.empty()) return;
    // Implicit starting waypoint at (0, spec position); hold past the end.
    const Waypoint start{0, dev.spec->position};
    const Waypoint* prev = &start;
    for (const Waypoint& w : wps) {
      if (tick >= w.tick) {
        prev = &w;
        continue;
      }
      const double f = static_cast<double>(tick - prev->tick) /
                       static_cast<double>(w.tick - prev->tick);
      dev.position = {prev->position.x + f * (w.position.x - prev->position.x),
                      prev->position.y + f * (w.position.y - prev->position.y)};
      return;
    }
    dev.position = prev->position;
  }

  void on_link_failure(EngineDevice& dev, std::int64_t tick) {
    if (dev.phase != EngineDevice::Phase::none) {
      release_service_slot(dev);
      dev.phase = EngineDevice::Phase::none;
      dev.metrics.failed += 1;
      TraceEvent e = make_event(tick, "request_failed", dev.spec->id);
      e.detail = "link_down";
      trace_.push_back(std::move(e));
    }
    TraceEvent e = make_event(tick, "link_down", dev.spec->id);
    e.cloudlet = attachment_id(dev);
    trace_.push_back(std::move(e));
    dev.attached = -1;
    dev.state = RadioState::searching;
    dev.search_until = tick + scenario_.reconnect_ticks;
  }

  void advance_phase(EngineDevice& dev, std::int64_t tick) {
    if (dev.phase == EngineDevice::Phase::none || tick < dev.phase_end) return;
    switch (dev.phase) {
      case EngineDevice::Phase::tx: {
        dev.phase = EngineDevice::Phase::wait;
        dev.phase_end = tick + service_ticks(dev);
        dev.state = RadioState::idle;
        if (policy_ == Policy::demccm && dev.attached >= 0) {
          dev.service_target = dev.attached;
          cloudlets_[static_cast<std::size_t>(dev.service_target)].load += 1;
        }
        break;
      }
      case EngineDevice::Phase::wait: {
        release_service_slot(dev);
        dev.phase = EngineDevice::Phase::rx;
        dev.phase_end = tick + transfer_ticks(dev, dev.spec->response_size);
        dev.state = RadioState::receiving;
        break;
      }
      case EngineDevice::Phase::rx: {
        dev.phase = EngineDevice::Phase::none;
        dev.state = RadioState::idle;
        dev.metrics.completed += 1;
        const double latency = static_cast<double>(tick - dev.issue_tick);
        dev.metrics.latency_samples.push_back(latency);
        TraceEvent e = make_event(tick, "request_completed", dev.spec->id);
        e.cloudlet = attachment_id(dev);
        e.value = latency;
        e.has_value = true;
        trace_.push_back(std::move(e));
        break;
      }
      case EngineDevice::Phase::none: break;
    }
  }

  void release_service_slot(EngineDevice& dev) {
    if (dev.service_target >= 0) {
      cloudlets_[static_cast<std::size_t>(dev.service_target)].load -= 1;
      dev.service_target = -1;
    }
  }

  void maybe_attach(EngineDevice& dev, std::int64_t tick) {
    if (dev.state != RadioState::searching || tick < dev.search_until) return;
    if (policy_ == Policy::demccm) {
      const std::string id = nearest_cloudlet(snapshot(dev), cloudlets_);
      dev.attached = cloudlet_index(id);
    } else {
      dev.attached = nearest_cloud_index(dev.position);
    }
    dev.state = RadioState::idle;
    TraceEvent e = make_event(tick, "attach", dev.spec->id);
    e.cloudlet = attachment_id(dev);
    trace_.push_back(std::move(e));
  }

  void maybe_issue_request(EngineDevice& dev, std::int64_t tick) {
    if (dev.attached < 0 || dev.phase != EngineDevice::Phase::none) return;
    if (tick == 0 || tick % dev.spec->request_period != 0) return;

    dev.metrics.issued += 1;
    const AppModel app{dev.spec->input_size, dev.spec->partitionable,
                       dev.spec->local_estimate_ticks};
    if (!offload_decision(dev.spec->offload_enabled, *dev.link, dev.spec->capability,
                          app)) {
      const auto local_ticks = static_cast<std::int64_t>(std::max(
          1.0, std::ceil(static_cast<double>(dev.spec->local_estimate_ticks) /
                         dev.spec->capability)));
      dev.metrics.local += 1;
      dev.metrics.latency_samples.push_back(static_cast<double>(local_ticks));
      TraceEvent e = make_event(tick, "request_local", dev.spec->id);
      e.value = static_cast<double>(local_ticks);
      e.has_value = true;
      trace_.push_back(std::move(e));
      return;
    }

    if (policy_ == Policy::demccm &&
        !cloudlets_[static_cast<std::size_t>(dev.attached)].has_route) {
      infeasible_routes_ += 1;
      dev.metrics.failed += 1;
      TraceEvent e = make_event(tick, "route_infeasible", dev.spec->id);
      e.cloudlet = attachment_id(dev);
      trace_.push_back(std::move(e));
      return;
    }

    dev.phase = EngineDevice::Phase::tx;
    dev.issue_tick = tick;
    dev.phase_end = tick + transfer_ticks(dev, dev.spec->input_size);
    dev.state = RadioState::transmitting;
    TraceEvent e = make_event(tick, "request_issued", dev.spec->id);
    e.cloudlet = attachment_id(dev);
    trace_.push_back(std::move(e));
  }

  void maybe_handoff(EngineDevice& dev, std::int64_t tick) {
    if (policy_ != Policy::demccm || scenario_.handoff_period <= 0) return;
    if (dev.attached < 0 || dev.phase != EngineDevice::Phase::none) return;
    if (tick == 0 || tick % scenario_.handoff_period != 0) return;
    const CloudletState& current = cloudlets_[static_cast<std::size_t>(dev.attached)];
    const auto target =
        handoff_check(snapshot(dev), current, cloudlets_, scenario_.hysteresis,
                      scenario_.cost_weights, scenario_.latency_per_distance);
    if (!target) return;
    TraceEvent e = make_event(tick, "handoff", dev.spec->id);
    e.cloudlet = *target;
    e.detail = current.id;
    trace_.push_back(std::move(e));
    dev.attached = cloudlet_index(*target);
    dev.metrics.handoffs += 1;
  }

  // --- lookups ---

  DeviceState snapshot(const EngineDevice& dev) const {
    DeviceState s;
    s.id = dev.spec->id;
    s.position = dev.position;
    s.radio_state = dev.state;
    if (dev.attached >= 0 && policy_ == Policy::demccm)
      s.attached_cloudlet = cloudlets_[static_cast<std::size_t>(dev.attached)].id;
    s.energy_used = dev.metrics.energy;
    return s;
  }

  int cloudlet_index(const std::string& id) const {
    for (std::size_t i = 0; i < cloudlets_.size(); ++i)
      if (cloudlets_[i].id == id) return static_cast<int>(i);
    invalid("unknown cloudlet '" + id + "'");
  }

  int nearest_cloud_index(const Vec2& pos) const {
    int best = -1;
    double best_distance = 0.0;
    for (std::size_t i = 0; i < clouds_.size(); ++i) {
      const double d = distance(pos, clouds_[i].position);
      if (best < 0 || d < best_distance) {
        best = static_cast<int>(i);
        best_distance = d;
      }
    }
    if (best < 0) invalid("no cloud servers");
    return best;
  }

  std::string attachment_id(const EngineDevice& dev) const {
    if (dev.attached < 0) return {};
    if (policy_ == Policy::demccm)
      return cloudlets_[static_cast<std::size_t>(dev.attached)].id;
    return clouds_[static_cast<std::size_t>(dev.attached)].id;
  }

  Vec2 attachment_position(const EngineDevice& dev) const {
    if (policy_ == Policy::demccm)
      return cloudlets_[static_cast<std::size_t>(dev.attached)].position;
    return clouds_[static_cast<std::size_t>(dev.attached)].position;
  }

  std::int64_t service_ticks(const EngineDevice& dev) const {
    if (policy_ == Policy::demccm)
      return cloudlets_[static_cast<std::size_t>(dev.attached)].service_ticks;
    return clouds_[static_cast<std::size_t>(dev.attached)].service_ticks;
  }

  std::int64_t transfer_ticks(const EngineDevice& dev, double payload) const {
    const double dist = distance(dev.position, attachment_position(dev));
    const double duration = payload / dev.link->bandwidth +
                            scenario_.latency_per_distance * dist;
    const std::int64_t ticks =
        dev.link->base_latency + static_cast<std::int64_t>(std::ceil(duration));
    return std::max<std::int64_t>(1, ticks);
  }

  TraceEvent make_event(std::int64_t tick, const char* type, const std::string& device) {
    TraceEvent e;
    e.tick = tick;
    e.seq = next_seq_++;
    e.type = type;
    e.device = device;
    return e;
  }

  SimResult finish() {
    SimMetrics metrics;
    metrics.policy = to_string(policy_);
    metrics.seed = seed_;
    metrics.infeasible_routes = infeasible_routes_;
    for (EngineDevice& dev : devices_)
      metrics.devices.emplace(dev.spec->id, std::move(dev.metrics));
    return SimResult{std::move(metrics), std::move(trace_)};
  }

  const Scenario& scenario_;
  Policy policy_;
  std::uint64_t seed_;
  std::vector<CloudletState> cloudlets_;
  std::vector<CloudServerSpec> clouds_;
  std::vector<EngineDevice> devices_;
  Trace trace_;
  std::uint64_t next_seq_{0};
  std::int64_t infeasible_routes_{0};
};

}  // namespace

SimResult run_policy(const Scenario& s, Policy policy, std::uint64_t seed) {
  validate_scenario(s);
  if (policy == Policy::demccm && !s.devices.empty() && s.cloudlets.empty())
    invalid("policy demccm requires at least one cloudlet");
  Engine engine(s, policy, seed);
  return engine.run();
}

SimResult run(const Scenario& s, std::uint64_t seed) {
  return run_policy(s, s.policy, seed);
}

SimResult baseline_direct_to_cloud(const Scenario& s, std::uint64_t seed) {
  return run_policy(s, Policy::direct, seed);
}

std::map<std::string, double> replay_device_energy(const Trace& trace) {
  std::map<std::string, double> totals;
  for (const TraceEvent& e : trace) {
    if (e.type != "energy") continue;
    totals[e.device] += e.value;
  }
  return totals;
}

}  // namespace sim
}  // namespace cdp
