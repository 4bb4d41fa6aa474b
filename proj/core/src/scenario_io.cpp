#include "cdp/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace cdp {
namespace io {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Formatting primitives
// ---------------------------------------------------------------------------

// Shortest round-trip representation; "7" rather than "7.0" for integral
// values, which json parsers read back as the same number.
std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
}

// Emits integral values without a decimal point so documents authored from
// integer tables re-serialize digit for digit.
json number_json(double v) {
  if (std::floor(v) == v && std::abs(v) < 9007199254740992.0)
    return json(static_cast<std::int64_t>(v));
  return json(v);
}

// ---------------------------------------------------------------------------
// Typed JSON access with field paths
// ---------------------------------------------------------------------------

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw ValidationError(field(path, key), "missing required field");
  return *it;
}

void expect_object(const json& v, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!v.is_object()) throw ValidationError(path, "expected an object");
  for (const auto& [key, value] : v.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&key](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ValidationError(field(path, key.c_str()), "unknown field");
  }
}

const json& expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array");
  return v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ValidationError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ValidationError(path, "expected a boolean");
  return v.get<bool>();
}

sim::Vec2 as_position(const json& v, const std::string& path) {
  const json& arr = expect_array(v, path);
  if (arr.size() != 2)
    throw ValidationError(path, "expected a [x, y] pair");
  return {as_number(arr[0], item(path, 0)), as_number(arr[1], item(path, 1))};
}

// ---------------------------------------------------------------------------
// Problem documents
// ---------------------------------------------------------------------------

RouteProblem problem_from_json(const json& j, const std::string& path,
                               bool with_schema) {
  if (with_schema) {
    expect_object(j, path, {"schema_version", "nodes", "time_constraint", "confidence"});
    const auto version = as_integer(require(j, "schema_version", path),
                                    field(path, "schema_version"));
    if (version != 1)
      throw ValidationError(field(path, "schema_version"),
                            "unsupported schema version");
  } else {
    expect_object(j, path, {"nodes", "time_constraint", "confidence"});
  }

  RouteProblem p;
  p.time_constraint = static_cast<int>(
      as_integer(require(j, "time_constraint", path), field(path, "time_constraint")));
  p.confidence = as_number(require(j, "confidence", path), field(path, "confidence"));

  const json& nodes = expect_array(require(j, "nodes", path), field(path, "nodes"));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const std::string npath = item(field(path, "nodes"), n);
    expect_object(nodes[n], npath, {"id", "methods"});
    NodeSpec node;
    node.id = as_string(require(nodes[n], "id", npath), field(npath, "id"));
    const json& methods =
        expect_array(require(nodes[n], "methods", npath), field(npath, "methods"));
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const std::string mpath = item(field(npath, "methods"), m);
      expect_object(methods[m], mpath, {"id", "options"});
      MethodProfile method;
      method.id = as_string(require(methods[m], "id", mpath), field(mpath, "id"));
      const json& options =
          expect_array(require(methods[m], "options", mpath), field(mpath, "options"));
      for (std::size_t o = 0; o < options.size(); ++o) {
        const std::string opath = item(field(mpath, "options"), o);
        expect_object(options[o], opath, {"time", "perf", "energy"});
        ExecutionOption opt;
        opt.time = static_cast<int>(
            as_integer(require(options[o], "time", opath), field(opath, "time")));
        opt.perf = as_number(require(options[o], "perf", opath), field(opath, "perf"));
        opt.energy =
            as_number(require(options[o], "energy", opath), field(opath, "energy"));
        method.options.push_back(opt);
      }
      node.methods.push_back(std::move(method));
    }
    p.nodes.push_back(std::move(node));
  }

  try {
    validate_problem(p);
  } catch (const ValidationError& e) {
    if (path.empty()) throw;
    throw ValidationError(path + "." + e.field_path(), e.message());
  }
  return p;
}

json problem_to_json(const RouteProblem& p, bool with_schema) {
  json j;
  if (with_schema) j["schema_version"] = 1;
  j["time_constraint"] = p.time_constraint;
  j["confidence"] = p.confidence;
  j["nodes"] = json::array();
  for (const NodeSpec& node : p.nodes) {
    json jnode;
    jnode["id"] = node.id;
    jnode["methods"] = json::array();
    for (const MethodProfile& m : node.methods) {
      json jm;
      jm["id"] = m.id;
      jm["options"] = json::array();
      for (const ExecutionOption& o : m.options) {
        json jo;
        jo["time"] = o.time;
        jo["perf"] = o.perf;
        jo["energy"] = number_json(o.energy);
        jm["options"].push_back(std::move(jo));
      }
      jnode["methods"].push_back(std::move(jm));
    }
    j["nodes"].push_back(std::move(jnode));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Scenario documents
// ---------------------------------------------------------------------------

sim::StatsTable stats_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"rows"});
  sim::StatsTable table;
  const json& rows = expect_array(require(j, "rows", path), field(path, "rows"));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rpath = item(field(path, "rows"), r);
    expect_object(rows[r], rpath, {"time", "pairs"});
    sim::StatsRow row;
    row.time = static_cast<int>(
        as_integer(require(rows[r], "time", rpath), field(rpath, "time")));
    const json& pairs =
        expect_array(require(rows[r], "pairs", rpath), field(rpath, "pairs"));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string ppath = item(field(rpath, "pairs"), i);
      const json& pair = expect_array(pairs[i], ppath);
      if (pair.size() != 2)
        throw ValidationError(ppath, "expected a [perf_index, energy] pair");
      sim::StatsPair sp;
      sp.perf_index = as_number(pair[0], item(ppath, 0));
      sp.energy = as_number(pair[1], item(ppath, 1));
      row.pairs.push_back(std::move(sp));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

json stats_to_json(const sim::StatsTable& t) {
  json j;
  j["rows"] = json::array();
  for (const sim::StatsRow& row : t.rows) {
    json jr;
    jr["time"] = row.time;
    jr["pairs"] = json::array();
    for (const sim::StatsPair& p : row.pairs)
      jr["pairs"].push_back(json::array({number_json(p.perf_index), number_json(p.energy)}));
    j["rows"].push_back(std::move(jr));
  }
  return j;
}

sim::PowerTable power_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"searching", "idle", "transmitting", "receiving"});
  sim::PowerTable p;
  if (j.contains("searching")) p.searching = as_number(j["searching"], field(path, "searching"));
  if (j.contains("idle")) p.idle = as_number(j["idle"], field(path, "idle"));
  if (j.contains("transmitting"))
    p.transmitting = as_number(j["transmitting"], field(path, "transmitting"));
  if (j.contains("receiving")) p.receiving = as_number(j["receiving"], field(path, "receiving"));
  return p;
}

}  // namespace

RouteProblem parse_problem(std::string_view text) {
  return problem_from_json(parse_json(text), "", true);
}

std::string serialize_problem(const RouteProblem& p) {
  return problem_to_json(p, true).dump(2) + "\n";
}

sim::Scenario parse_scenario(std::string_view text) {
  const json j = parse_json(text);
  const std::string root;
  expect_object(j, root,
                {"schema_version", "policy", "horizon", "hysteresis", "cost_weights",
                 "latency_per_distance", "reconnect_ticks", "handoff_period", "links",
                 "devices", "cloudlets", "cloud_servers"});

  sim::Scenario s;
  const auto version =
      as_integer(require(j, "schema_version", root), "schema_version");
  if (version != 1)
    throw ValidationError("schema_version", "unsupported schema version");

  const std::string policy_name = as_string(require(j, "policy", root), "policy");
  const auto policy = sim::policy_from_string(policy_name);
  if (!policy)
    throw ValidationError("policy", "must be 'demccm' or 'direct'");
  s.policy = *policy;
  s.horizon = as_integer(require(j, "horizon", root), "horizon");

  if (j.contains("hysteresis")) s.hysteresis = as_number(j["hysteresis"], "hysteresis");
  if (j.contains("cost_weights")) {
    expect_object(j["cost_weights"], "cost_weights", {"energy", "latency"});
    if (j["cost_weights"].contains("energy"))
      s.cost_weights.energy = as_number(j["cost_weights"]["energy"], "cost_weights.energy");
    if (j["cost_weights"].contains("latency"))
      s.cost_weights.latency =
          as_number(j["cost_weights"]["latency"], "cost_weights.latency");
  }
  if (j.contains("latency_per_distance"))
    s.latency_per_distance = as_number(j["latency_per_distance"], "latency_per_distance");
  if (j.contains("reconnect_ticks"))
    s.reconnect_ticks = as_integer(j["reconnect_ticks"], "reconnect_ticks");
  if (j.contains("handoff_period"))
    s.handoff_period = as_integer(j["handoff_period"], "handoff_period");

  if (j.contains("links")) {
    const json& links = expect_array(j["links"], "links");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string path = item("links", i);
      expect_object(links[i], path,
                    {"id", "kind", "bandwidth", "base_latency", "per_unit_cost",
                     "stability"});
      sim::LinkModel link;
      link.id = as_string(require(links[i], "id", path), field(path, "id"));
      const std::string kind =
          as_string(require(links[i], "kind", path), field(path, "kind"));
      if (kind == "wifi") {
        link.kind = sim::LinkModel::Kind::wifi;
      } else if (kind == "cellular") {
        link.kind = sim::LinkModel::Kind::cellular;
      } else {
        throw ValidationError(field(path, "kind"), "must be 'wifi' or 'cellular'");
      }
      link.bandwidth =
          as_number(require(links[i], "bandwidth", path), field(path, "bandwidth"));
      if (links[i].contains("base_latency"))
        link.base_latency = static_cast<int>(
            as_integer(links[i]["base_latency"], field(path, "base_latency")));
      if (links[i].contains("per_unit_cost"))
        link.per_unit_cost =
            as_number(links[i]["per_unit_cost"], field(path, "per_unit_cost"));
      if (links[i].contains("stability"))
        link.stability = as_number(links[i]["stability"], field(path, "stability"));
      s.links.push_back(std::move(link));
    }
  }

  if (j.contains("devices")) {
    const json& devices = expect_array(j["devices"], "devices");
    for (std::size_t i = 0; i < devices.size(); ++i) {
      const std::string path = item("devices", i);
      expect_object(devices[i], path,
                    {"id", "position", "link", "power", "request_period", "input_size",
                     "response_size", "offload_enabled", "partitionable", "capability",
                     "local_estimate_ticks", "waypoints"});
      sim::DeviceSpec d;
      d.id = as_string(require(devices[i], "id", path), field(path, "id"));
      d.position =
          as_position(require(devices[i], "position", path), field(path, "position"));
      d.link_id = as_string(require(devices[i], "link", path), field(path, "link"));
      if (devices[i].contains("power"))
        d.power = power_from_json(devices[i]["power"], field(path, "power"));
      if (devices[i].contains("request_period"))
        d.request_period =
            as_integer(devices[i]["request_period"], field(path, "request_period"));
      if (devices[i].contains("input_size"))
        d.input_size = as_number(devices[i]["input_size"], field(path, "input_size"));
      if (devices[i].contains("response_size"))
        d.response_size =
            as_number(devices[i]["response_size"], field(path, "response_size"));
      if (devices[i].contains("offload_enabled"))
        d.offload_enabled =
            as_bool(devices[i]["offload_enabled"], field(path, "offload_enabled"));
      if (devices[i].contains("partitionable"))
        d.partitionable =
            as_bool(devices[i]["partitionable"], field(path, "partitionable"));
      if (devices[i].contains("capability"))
        d.capability = as_number(devices[i]["capability"], field(path, "capability"));
      if (devices[i].contains("local_estimate_ticks"))
        d.local_estimate_ticks = static_cast<int>(as_integer(
            devices[i]["local_estimate_ticks"], field(path, "local_estimate_ticks")));
      if (devices[i].contains("waypoints")) {
        const json& wps = expect_array(devices[i]["waypoints"], field(path, "waypoints"));
        for (std::size_t w = 0; w < wps.size(); ++w) {
          const std::string wpath = item(field(path, "waypoints"), w);
          expect_object(wps[w], wpath, {"tick", "position"});
          sim::Waypoint wp;
          wp.tick = as_integer(require(wps[w], "tick", wpath), field(wpath, "tick"));
          wp.position =
              as_position(require(wps[w], "position", wpath), field(wpath, "position"));
          d.waypoints.push_back(wp);
        }
      }
      s.devices.push_back(std::move(d));
    }
  }

  if (j.contains("cloudlets")) {
    const json& cloudlets = expect_array(j["cloudlets"], "cloudlets");
    for (std::size_t i = 0; i < cloudlets.size(); ++i) {
      const std::string path = item("cloudlets", i);
      expect_object(cloudlets[i], path,
                    {"id", "position", "routes", "stats", "service_scale"});
      sim::CloudletSpec c;
      c.id = as_string(require(cloudlets[i], "id", path), field(path, "id"));
      c.position =
          as_position(require(cloudlets[i], "position", path), field(path, "position"));
      if (cloudlets[i].contains("service_scale"))
        c.service_scale =
            as_number(cloudlets[i]["service_scale"], field(path, "service_scale"));
      if (cloudlets[i].contains("routes")) {
        const json& routes = expect_array(cloudlets[i]["routes"], field(path, "routes"));
        for (std::size_t r = 0; r < routes.size(); ++r) {
          const std::string rpath = item(field(path, "routes"), r);
          expect_object(routes[r], rpath, {"cloud_server", "problem"});
          sim::RouteSpec route;
          route.cloud_server_id = as_string(require(routes[r], "cloud_server", rpath),
                                            field(rpath, "cloud_server"));
          route.problem = problem_from_json(require(routes[r], "problem", rpath),
                                            field(rpath, "problem"), false);
          c.routes.push_back(std::move(route));
        }
      }
      if (cloudlets[i].contains("stats"))
        c.stats = stats_from_json(cloudlets[i]["stats"], field(path, "stats"));
      s.cloudlets.push_back(std::move(c));
    }
  }

  if (j.contains("cloud_servers")) {
    const json& clouds = expect_array(j["cloud_servers"], "cloud_servers");
    for (std::size_t i = 0; i < clouds.size(); ++i) {
      const std::string path = item("cloud_servers", i);
      expect_object(clouds[i], path, {"id", "position", "service_ticks"});
      sim::CloudServerSpec c;
      c.id = as_string(require(clouds[i], "id", path), field(path, "id"));
      c.position =
          as_position(require(clouds[i], "position", path), field(path, "position"));
      if (clouds[i].contains("service_ticks"))
        c.service_ticks = static_cast<int>(
            as_integer(clouds[i]["service_ticks"], field(path, "service_ticks")));
      s.cloud_servers.push_back(std::move(c));
    }
  }

  sim::validate_scenario(s);
  return s;
}

std::string serialize_scenario(const sim::Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["policy"] = sim::to_string(s.policy);
  j["horizon"] = s.horizon;
  j["hysteresis"] = s.hysteresis;
  j["cost_weights"] = {{"energy", s.cost_weights.energy},
                       {"latency", s.cost_weights.latency}};
  j["latency_per_distance"] = s.latency_per_distance;
  j["reconnect_ticks"] = s.reconnect_ticks;
  j["handoff_period"] = s.handoff_period;

  j["links"] = json::array();
  for (const sim::LinkModel& l : s.links) {
    json jl;
    jl["id"] = l.id;
    jl["kind"] = l.kind == sim::LinkModel::Kind::wifi ? "wifi" : "cellular";
    jl["bandwidth"] = l.bandwidth;
    jl["base_latency"] = l.base_latency;
    jl["per_unit_cost"] = l.per_unit_cost;
    jl["stability"] = l.stability;
    j["links"].push_back(std::move(jl));
  }

  j["devices"] = json::array();
  for (const sim::DeviceSpec& d : s.devices) {
    json jd;
    jd["id"] = d.id;
    jd["position"] = {d.position.x, d.position.y};
    jd["link"] = d.link_id;
    jd["power"] = {{"searching", d.power.searching},
                   {"idle", d.power.idle},
                   {"transmitting", d.power.transmitting},
                   {"receiving", d.power.receiving}};
    jd["request_period"] = d.request_period;
    jd["input_size"] = d.input_size;
    jd["response_size"] = d.response_size;
    jd["offload_enabled"] = d.offload_enabled;
    jd["partitionable"] = d.partitionable;
    jd["capability"] = d.capability;
    jd["local_estimate_ticks"] = d.local_estimate_ticks;
    jd["waypoints"] = json::array();
    for (const sim::Waypoint& w : d.waypoints)
      jd["waypoints"].push_back(
          {{"tick", w.tick}, {"position", {w.position.x, w.position.y}}});
    j["devices"].push_back(std::move(jd));
  }

  j["cloudlets"] = json::array();
  for (const sim::CloudletSpec& c : s.cloudlets) {
    json jc;
    jc["id"] = c.id;
    jc["position"] = {c.position.x, c.position.y};
    jc["service_scale"] = c.service_scale;
    if (!c.routes.empty()) {
      jc["routes"] = json::array();
      for (const sim::RouteSpec& r : c.routes)
        jc["routes"].push_back({{"cloud_server", r.cloud_server_id},
                                {"problem", problem_to_json(r.problem, false)}});
    }
    if (!c.stats.empty()) jc["stats"] = stats_to_json(c.stats);
    j["cloudlets"].push_back(std::move(jc));
  }

  j["cloud_servers"] = json::array();
  for (const sim::CloudServerSpec& c : s.cloud_servers)
    j["cloud_servers"].push_back({{"id", c.id},
                                  {"position", {c.position.x, c.position.y}},
                                  {"service_ticks", c.service_ticks}});

  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Statistics tables: "T (P,E) (P,E) ..." rows, spelling preserved
// ---------------------------------------------------------------------------

namespace {

double parse_number_token(const std::string& token, int line, int column) {
  double value = 0.0;
  const char* begin = token.c_str();
  const auto res = std::from_chars(begin, begin + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != begin + token.size())
    throw ParseError("malformed number '" + token + "'", line, column);
  return value;
}

}  // namespace

sim::StatsTable load_table3_stats(std::string_view text) {
  sim::StatsTable table;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::size_t i = 0;
    auto skip_spaces = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_spaces();
    if (i >= line.size() || line[i] == '#') continue;

    sim::StatsRow row;
    const std::size_t t_begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    const std::string t_token(line.substr(t_begin, i - t_begin));
    const double t_value =
        parse_number_token(t_token, line_no, static_cast<int>(t_begin) + 1);
    if (t_value != std::floor(t_value))
      throw ParseError("row key must be an integer", line_no,
                       static_cast<int>(t_begin) + 1);
    row.time = static_cast<int>(t_value);

    for (;;) {
      skip_spaces();
      if (i >= line.size()) break;
      if (line[i] != '(')
        throw ParseError("expected '(' to open a (P,E) pair", line_no,
                         static_cast<int>(i) + 1);
      const std::size_t open = i++;
      const std::size_t comma = line.find(',', i);
      if (comma == std::string_view::npos)
        throw ParseError("expected ',' inside a (P,E) pair", line_no,
                         static_cast<int>(open) + 1);
      const std::size_t close = line.find(')', comma);
      if (close == std::string_view::npos)
        throw ParseError("expected ')' to close a (P,E) pair", line_no,
                         static_cast<int>(open) + 1);
      sim::StatsPair pair;
      pair.perf_text = std::string(line.substr(i, comma - i));
      pair.energy_text = std::string(line.substr(comma + 1, close - comma - 1));
      pair.perf_index =
          parse_number_token(pair.perf_text, line_no, static_cast<int>(i) + 1);
      pair.energy = parse_number_token(pair.energy_text, line_no,
                                       static_cast<int>(comma) + 2);
      row.pairs.push_back(std::move(pair));
      i = close + 1;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string serialize_table3(const sim::StatsTable& t) {
  std::string out;
  for (const sim::StatsRow& row : t.rows) {
    out += std::to_string(row.time);
    for (const sim::StatsPair& p : row.pairs) {
      out += " (";
      out += p.perf_text.empty() ? format_exact(p.perf_index) : p.perf_text;
      out += ',';
      out += p.energy_text.empty() ? format_exact(p.energy) : p.energy_text;
      out += ')';
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string assignment_to_string(const std::vector<NodeChoice>& assignment) {
  std::string out;
  for (const NodeChoice& c : assignment) {
    if (!out.empty()) out += ';';
    out += c.node_id;
    out += ':';
    out += c.method_id;
    out += '@';
    out += std::to_string(c.time);
  }
  return out;
}

namespace {

void append_assignment_json(std::string& out, const std::vector<NodeChoice>& assignment) {
  out += '[';
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"node\":";
    append_json_string(out, assignment[i].node_id);
    out += ",\"method\":";
    append_json_string(out, assignment[i].method_id);
    out += ",\"time\":";
    out += std::to_string(assignment[i].time);
    out += '}';
  }
  out += ']';
}

}  // namespace

std::string write_report(const std::vector<FrontierRow>& rows, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::csv) {
    out = "time,perf,energy,assignment\n";
    for (const FrontierRow& row : rows) {
      out += std::to_string(row.time_budget);
      out += ',';
      out += format_sig6(row.entry.pair.perf);
      out += ',';
      out += format_sig6(row.entry.pair.energy);
      out += ',';
      out += assignment_to_string(row.entry.assignment);
      out += '\n';
    }
    return out;
  }
  for (const FrontierRow& row : rows) {
    out += "{\"time\":";
    out += std::to_string(row.time_budget);
    out += ",\"perf\":";
    out += format_exact(row.entry.pair.perf);
    out += ",\"energy\":";
    out += format_exact(row.entry.pair.energy);
    out += ",\"time_used\":";
    out += std::to_string(row.entry.time_used);
    out += ",\"assignment\":";
    append_assignment_json(out, row.entry.assignment);
    out += "}\n";
  }
  return out;
}

namespace {

struct DeviceRow {
  const std::string* id;
  const sim::DeviceMetrics* m;
  double p50;
  double p95;
};

std::vector<DeviceRow> device_rows(const sim::SimMetrics& metrics,
                                   std::vector<std::vector<double>>& sorted_storage) {
  std::vector<DeviceRow> rows;
  for (const auto& [id, m] : metrics.devices) {
    sorted_storage.push_back(m.latency_samples);
    std::sort(sorted_storage.back().begin(), sorted_storage.back().end());
    rows.push_back({&id, &m, 0.0, 0.0});
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].p50 = sim::percentile(sorted_storage[i], 0.50);
    rows[i].p95 = sim::percentile(sorted_storage[i], 0.95);
  }
  return rows;
}

}  // namespace

std::string write_report(const sim::SimMetrics& metrics, ReportFormat format) {
  std::vector<std::vector<double>> sorted;
  const std::vector<DeviceRow> rows = device_rows(metrics, sorted);

  if (format == ReportFormat::csv) {
    std::string out =
        "device,energy,searching,idle,transmitting,receiving,issued,completed,"
        "failed,local,handoffs,latency_p50,latency_p95\n";
    for (const DeviceRow& r : rows) {
      out += *r.id;
      out += ',';
      out += format_sig6(r.m->energy);
      out += ',';
      out += format_sig6(r.m->energy_searching);
      out += ',';
      out += format_sig6(r.m->energy_idle);
      out += ',';
      out += format_sig6(r.m->energy_transmitting);
      out += ',';
      out += format_sig6(r.m->energy_receiving);
      out += ',';
      out += std::to_string(r.m->issued);
      out += ',';
      out += std::to_string(r.m->completed);
      out += ',';
      out += std::to_string(r.m->failed);
      out += ',';
      out += std::to_string(r.m->local);
      out += ',';
      out += std::to_string(r.m->handoffs);
      out += ',';
      out += format_sig6(r.p50);
      out += ',';
      out += format_sig6(r.p95);
      out += '\n';
    }
    return out;
  }
  return metrics_to_jsonl(metrics);
}

std::string solution_report(const RouteSolution& s, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "time_used,perf,energy,assignment\n";
    out += std::to_string(s.time_used);
    out += ',';
    out += format_sig6(s.achieved.perf);
    out += ',';
    out += format_sig6(s.achieved.energy);
    out += ',';
    out += assignment_to_string(s.assignment);
    out += '\n';
    return out;
  }
  std::string out = "{\"time_used\":";
  out += std::to_string(s.time_used);
  out += ",\"perf\":";
  out += format_exact(s.achieved.perf);
  out += ",\"energy\":";
  out += format_exact(s.achieved.energy);
  out += ",\"assignment\":";
  append_assignment_json(out, s.assignment);
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Traces and metrics files
// ---------------------------------------------------------------------------

std::string trace_to_jsonl(const sim::Trace& trace) {
  std::string out;
  for (const sim::TraceEvent& e : trace) {
    out += "{\"seq\":";
    out += std::to_string(e.seq);
    out += ",\"tick\":";
    out += std::to_string(e.tick);
    out += ",\"type\":";
    append_json_string(out, e.type);
    if (!e.device.empty()) {
      out += ",\"device\":";
      append_json_string(out, e.device);
    }
    if (!e.cloudlet.empty()) {
      out += ",\"cloudlet\":";
      append_json_string(out, e.cloudlet);
    }
    if (!e.detail.empty()) {
      out += ",\"detail\":";
      append_json_string(out, e.detail);
    }
    if (e.has_value) {
      out += ",\"value\":";
      out += format_exact(e.value);
    }
    if (e.has_total) {
      out += ",\"total\":";
      out += format_exact(e.total);
    }
    out += "}\n";
  }
  return out;
}

sim::Trace parse_trace_jsonl(std::string_view text) {
  sim::Trace trace;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(e.what(), line_no, static_cast<int>(e.byte));
    }
    sim::TraceEvent event;
    event.seq = j.at("seq").get<std::uint64_t>();
    event.tick = j.at("tick").get<std::int64_t>();
    event.type = j.at("type").get<std::string>();
    if (j.contains("device")) event.device = j["device"].get<std::string>();
    if (j.contains("cloudlet")) event.cloudlet = j["cloudlet"].get<std::string>();
    if (j.contains("detail")) event.detail = j["detail"].get<std::string>();
    if (j.contains("value")) {
      event.value = j["value"].get<double>();
      event.has_value = true;
    }
    if (j.contains("total")) {
      event.total = j["total"].get<double>();
      event.has_total = true;
    }
    trace.push_back(std::move(event));
  }
  return trace;
}

std::string metrics_to_jsonl(const sim::SimMetrics& metrics) {
  std::string out;
  double latency_sum = 0.0;
  std::size_t latency_count = 0;
  for (const auto& [id, m] : metrics.devices) {
    std::vector<double> sorted = m.latency_samples;
    std::sort(sorted.begin(), sorted.end());
    for (const double v : sorted) {
      latency_sum += v;
      ++latency_count;
    }
    out += "{\"record\":\"device\",\"id\":";
    append_json_string(out, id);
    out += ",\"energy\":";
    out += format_exact(m.energy);
    out += ",\"searching\":";
    out += format_exact(m.energy_searching);
    out += ",\"idle\":";
    out += format_exact(m.energy_idle);
    out += ",\"transmitting\":";
    out += format_exact(m.energy_transmitting);
    out += ",\"receiving\":";
    out += format_exact(m.energy_receiving);
    out += ",\"issued\":";
    out += std::to_string(m.issued);
    out += ",\"completed\":";
    out += std::to_string(m.completed);
    out += ",\"failed\":";
    out += std::to_string(m.failed);
    out += ",\"local\":";
    out += std::to_string(m.local);
    out += ",\"handoffs\":";
    out += std::to_string(m.handoffs);
    out += ",\"latency_p50\":";
    out += format_exact(sim::percentile(sorted, 0.50));
    out += ",\"latency_p95\":";
    out += format_exact(sim::percentile(sorted, 0.95));
    out += ",\"samples\":";
    out += std::to_string(sorted.size());
    out += "}\n";
  }

  const std::vector<double> merged = metrics.merged_latencies();
  out += "{\"record\":\"aggregate\",\"policy\":";
  append_json_string(out, metrics.policy);
  out += ",\"seed\":";
  out += std::to_string(metrics.seed);
  out += ",\"devices\":";
  out += std::to_string(metrics.devices.size());
  out += ",\"energy\":";
  out += format_exact(metrics.total_energy());
  out += ",\"issued\":";
  out += std::to_string(metrics.total_issued());
  out += ",\"completed\":";
  out += std::to_string(metrics.total_completed());
  out += ",\"failed\":";
  out += std::to_string(metrics.total_failed());
  out += ",\"local\":";
  out += std::to_string(metrics.total_local());
  out += ",\"handoffs\":";
  out += std::to_string(metrics.total_handoffs());
  out += ",\"infeasible_routes\":";
  out += std::to_string(metrics.infeasible_routes);
  out += ",\"latency_mean\":";
  out += format_exact(latency_count == 0 ? 0.0
                                         : latency_sum / static_cast<double>(latency_count));
  out += ",\"latency_p50\":";
  out += format_exact(sim::percentile(merged, 0.50));
  out += ",\"latency_p95\":";
  out += format_exact(sim::percentile(merged, 0.95));
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path + "'");
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace io
}  // namespace cdp
