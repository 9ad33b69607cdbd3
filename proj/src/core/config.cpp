#include "numapin/core/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "numapin/core/errors.hpp"

namespace numapin {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (std::string_view a : allowed) {
      ok = ok || item.key() == a;
    }
    if (!ok) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(where, std::string("missing key '") + key + "'");
  }
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    fail(where, "expected a number");
  }
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    fail(where, "expected an integer");
  }
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) {
    fail(where, "expected a string");
  }
  return v.get<std::string>();
}

std::vector<int> as_int_list(const json& v, const std::string& where) {
  if (!v.is_array()) {
    fail(where, "expected an array of integers");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int node_key(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    int id = std::stoi(key, &used);
    if (used == key.size()) {
      return id;
    }
  } catch (const std::exception&) {
  }
  fail(where, "node key '" + key + "' is not an integer");
}

Topology parse_topology(const json& v) {
  const std::string where = "topology";
  if (v.is_object()) {
    reject_unknown_keys(v, where, {"nodes", "cores_per_node"});
    return Topology::uniform(as_int(require(v, "nodes", where), where + ".nodes"),
                             as_int(require(v, "cores_per_node", where), where + ".cores_per_node"));
  }
  if (!v.is_array()) {
    fail(where, "expected an array of nodes or {nodes, cores_per_node}");
  }
  std::vector<NumaNode> nodes;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    reject_unknown_keys(v[i], w, {"node", "cores"});
    nodes.push_back({as_int(require(v[i], "node", w), w + ".node"),
                     as_int_list(require(v[i], "cores", w), w + ".cores")});
  }
  return Topology(std::move(nodes));
}

CoreAvailability parse_available(const json& v, const Topology& topology) {
  const std::string where = "available_cores";
  if (!v.is_object()) {
    fail(where, "expected an object");
  }
  if (v.contains("first")) {
    reject_unknown_keys(v, where, {"first"});
    return CoreAvailability::first_cores(topology, as_int_list(v["first"], where + ".first"));
  }
  std::map<NodeId, std::vector<CoreId>> cores;
  for (const auto& item : v.items()) {
    cores[node_key(item.key(), where)] = as_int_list(item.value(), where + "." + item.key());
  }
  return CoreAvailability(topology, std::move(cores));
}

InterferenceProfile parse_interference(const json& v) {
  const std::string where = "interference";
  if (!v.is_array()) {
    fail(where, "expected an array of phases");
  }
  InterferenceProfile profile;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const json& p = v[i];
    reject_unknown_keys(p, w, {"start", "end", "loads", "cores", "load"});
    InterferencePhase phase;
    phase.start = as_number(require(p, "start", w), w + ".start");
    if (p.contains("end") && !p["end"].is_null()) {
      phase.end = as_number(p["end"], w + ".end");
    }
    if (p.contains("loads")) {
      if (!p["loads"].is_object()) {
        fail(w + ".loads", "expected an object core -> load");
      }
      for (const auto& item : p["loads"].items()) {
        phase.loads[node_key(item.key(), w + ".loads")] =
            as_number(item.value(), w + ".loads." + item.key());
      }
    }
    if (p.contains("cores")) {
      const double load = as_number(require(p, "load", w), w + ".load");
      for (int core : as_int_list(p["cores"], w + ".cores")) {
        phase.loads[core] += load;
      }
    } else if (p.contains("load")) {
      fail(w, "'load' requires 'cores'");
    }
    profile.phases.push_back(std::move(phase));
  }
  return profile;
}

ResourceSpec make_spec(const std::string& name, const std::string& criterion,
                       const std::string& est, const std::string& opt, const std::string& where) {
  ResourceSpec spec;
  spec.name = name;
  auto c = parse_opt_criterion(criterion);
  if (!c) fail(where, "unknown optimisation criterion '" + criterion + "'");
  auto e = parse_est_method(est);
  if (!e) fail(where, "unknown estimation method '" + est + "'");
  auto o = parse_opt_method(opt);
  if (!o) fail(where, "unknown optimisation method '" + opt + "'");
  spec.opt_criterion = *c;
  spec.est_method = *e;
  spec.opt_method = *o;
  return spec;
}

ResourceSpec parse_nested_spec(const json& v, const std::string& where) {
  reject_unknown_keys(v, where, {"name", "opt_criterion", "est_method", "opt_method", "child"});
  ResourceSpec spec = make_spec(
      as_string(require(v, "name", where), where + ".name"),
      v.contains("opt_criterion") ? as_string(v["opt_criterion"], where) : "PROCESSING_SPEED",
      v.contains("est_method") ? as_string(v["est_method"], where) : "RL",
      as_string(require(v, "opt_method", where), where + ".opt_method"), where);
  if (v.contains("child") && !v["child"].is_null()) {
    spec.child = std::make_shared<ResourceSpec>(parse_nested_spec(v["child"], where + ".child"));
  }
  return spec;
}

std::vector<std::string> string_list(const json& obj, const char* key, const std::string& where,
                                     std::size_t expected, const char* fill) {
  std::vector<std::string> out;
  if (!obj.contains(key)) {
    out.assign(expected, fill);
    return out;
  }
  const json& v = obj[key];
  if (!v.is_array()) {
    fail(where + "." + key, "expected an array of strings");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_string(v[i], where + "." + key));
  }
  if (out.size() != expected) {
    fail(where + "." + key, "has " + std::to_string(out.size()) + " entries, RESOURCES has " +
                                std::to_string(expected));
  }
  return out;
}

// Parallel-array form mirroring the scheduler's initialisation block:
// RESOURCES / OPT_CRITERIA / RESOURCES_EST_METHODS / RESOURCES_OPT_METHODS and
// their CHILD_ counterparts, with "NULL" marking "no child".
std::vector<ResourceSpec> parse_listing(const json& v) {
  const std::string where = "resources";
  reject_unknown_keys(v, where,
                      {"RESOURCES", "OPT_CRITERIA", "RESOURCES_EST_METHODS",
                       "RESOURCES_OPT_METHODS", "CHILD_RESOURCES", "CHILD_OPT_CRITERIA",
                       "CHILD_RESOURCES_EST_METHODS", "CHILD_RESOURCES_OPT_METHODS"});
  const json& names_json = require(v, "RESOURCES", where);
  if (!names_json.is_array()) {
    fail(where + ".RESOURCES", "expected an array of strings");
  }
  const std::size_t n = names_json.size();
  const auto names = string_list(v, "RESOURCES", where, n, "");
  const auto criteria = string_list(v, "OPT_CRITERIA", where, n, "PROCESSING_SPEED");
  const auto est = string_list(v, "RESOURCES_EST_METHODS", where, n, "RL");
  const auto opt = string_list(v, "RESOURCES_OPT_METHODS", where, n, "AL");
  const auto child_names = string_list(v, "CHILD_RESOURCES", where, n, "NULL");
  const auto child_criteria = string_list(v, "CHILD_OPT_CRITERIA", where, n, "PROCESSING_SPEED");
  const auto child_est = string_list(v, "CHILD_RESOURCES_EST_METHODS", where, n, "RL");
  const auto child_opt = string_list(v, "CHILD_RESOURCES_OPT_METHODS", where, n, "AL");

  std::vector<ResourceSpec> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    ResourceSpec spec = make_spec(names[i], criteria[i], est[i], opt[i], w);
    if (child_names[i] != "NULL") {
      spec.child = std::make_shared<ResourceSpec>(
          make_spec(child_names[i], child_criteria[i], child_est[i], child_opt[i], w + ".child"));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<ResourceSpec> parse_resources(const json& v) {
  if (v.is_object()) {
    return parse_listing(v);
  }
  if (!v.is_array()) {
    fail("resources", "expected a listing object or an array of resource objects");
  }
  std::vector<ResourceSpec> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(parse_nested_spec(v[i], "resources[" + std::to_string(i) + "]"));
  }
  return out;
}

SchedulerParams parse_params(const json& v) {
  const std::string where = "params";
  if (!v.is_object()) {
    fail(where, "expected an object");
  }
  reject_unknown_keys(v, where, {"epsilon_scale", "lambda_scale", "eta", "zeta", "interval"});
  SchedulerParams p;
  if (v.contains("epsilon_scale")) p.epsilon_scale = as_number(v["epsilon_scale"], where);
  if (v.contains("lambda_scale")) p.lambda_scale = as_number(v["lambda_scale"], where);
  if (v.contains("eta")) p.eta = as_number(v["eta"], where + ".eta");
  if (v.contains("zeta") && !v["zeta"].is_null()) p.zeta = as_number(v["zeta"], where + ".zeta");
  if (v.contains("interval")) p.interval = as_number(v["interval"], where + ".interval");
  p.validate();
  return p;
}

MachineModel parse_machine(const json& v) {
  const std::string where = "machine";
  reject_unknown_keys(v, where, {"core_capacity", "remote_penalty", "noise_sigma"});
  MachineModel m;
  if (v.contains("core_capacity")) m.core_capacity = as_number(v["core_capacity"], where);
  if (v.contains("remote_penalty")) m.remote_penalty = as_number(v["remote_penalty"], where);
  if (v.contains("noise_sigma")) m.noise_sigma = as_number(v["noise_sigma"], where);
  m.validate();
  return m;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Scenario parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("config:" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
  if (!doc.is_object()) {
    throw ParseError("config:1:1: top level must be an object", 1, 1);
  }
  reject_unknown_keys(doc, "config",
                      {"schema_version", "name", "topology", "available_cores", "n_threads",
                       "work", "machine", "interference", "resources", "params", "time_scale",
                       "horizon", "master_thread"});
  const int version = as_int(require(doc, "schema_version", "config"), "schema_version");
  if (version != kScenarioSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(version));
  }

  Scenario s;
  s.name = doc.contains("name") ? as_string(doc["name"], "name") : "custom";
  s.topology = parse_topology(require(doc, "topology", "config"));
  s.available = doc.contains("available_cores") ? parse_available(doc["available_cores"], s.topology)
                                                : CoreAvailability::all(s.topology);
  s.workload.n_threads = as_int(require(doc, "n_threads", "config"), "n_threads");
  s.workload.work_per_thread = as_number(require(doc, "work", "config"), "work");
  if (doc.contains("machine")) s.machine = parse_machine(doc["machine"]);
  if (doc.contains("interference")) s.interference = parse_interference(doc["interference"]);
  s.resources = doc.contains("resources") ? parse_resources(doc["resources"]) : default_resources();
  if (doc.contains("params")) s.params = parse_params(doc["params"]);
  if (doc.contains("time_scale")) s.time_scale = as_number(doc["time_scale"], "time_scale");
  if (doc.contains("horizon")) s.horizon = as_number(doc["horizon"], "horizon");
  if (doc.contains("master_thread")) {
    if (!doc["master_thread"].is_boolean()) fail("master_thread", "expected a boolean");
    s.master_thread = doc["master_thread"].get<bool>();
  }
  s.validate();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace {

json spec_to_json(const ResourceSpec& spec) {
  json j = {{"name", spec.name},
            {"opt_criterion", to_string(spec.opt_criterion)},
            {"est_method", to_string(spec.est_method)},
            {"opt_method", to_string(spec.opt_method)}};
  if (spec.child) {
    j["child"] = spec_to_json(*spec.child);
  }
  return j;
}

}  // namespace

std::string to_config_text(const Scenario& s) {
  json doc = json::object();
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["name"] = s.name;
  json topo = json::array();
  for (const NumaNode& n : s.topology.nodes()) {
    topo.push_back({{"node", n.id}, {"cores", n.cores}});
  }
  doc["topology"] = topo;
  json avail = json::object();
  for (const auto& [node, cores] : s.available.by_node()) {
    avail[std::to_string(node)] = cores;
  }
  doc["available_cores"] = avail;
  doc["n_threads"] = s.workload.n_threads;
  doc["work"] = s.workload.work_per_thread;
  doc["machine"] = {{"core_capacity", s.machine.core_capacity},
                    {"remote_penalty", s.machine.remote_penalty},
                    {"noise_sigma", s.machine.noise_sigma}};
  json phases = json::array();
  for (const InterferencePhase& p : s.interference.phases) {
    json loads = json::object();
    for (const auto& [core, load] : p.loads) {
      loads[std::to_string(core)] = load;
    }
    phases.push_back({{"start", p.start},
                      {"end", p.end ? json(*p.end) : json(nullptr)},
                      {"loads", loads}});
  }
  doc["interference"] = phases;
  json resources = json::array();
  for (const ResourceSpec& r : s.resources) {
    resources.push_back(spec_to_json(r));
  }
  doc["resources"] = resources;
  doc["params"] = {{"epsilon_scale", s.params.epsilon_scale},
                   {"lambda_scale", s.params.lambda_scale},
                   {"eta", s.params.eta},
                   {"zeta", s.params.zeta ? json(*s.params.zeta) : json(nullptr)},
                   {"interval", s.params.interval}};
  doc["time_scale"] = s.time_scale;
  doc["horizon"] = s.horizon;
  doc["master_thread"] = s.master_thread;
  return doc.dump(2) + "\n";
}

}  // namespace numapin
