#include "numapin/harness/scenarios.hpp"

#include <stdexcept>

namespace numapin::harness {

namespace {

enum class Availability { Uniform, NonUniform, TimeVarying, Alternating };

struct CatalogEntry {
  std::string_view name;
  int cores_node0;
  int cores_node1;
  Availability availability;
};

constexpr CatalogEntry kCatalog[] = {
    {"A.1", 8, 2, Availability::Uniform},     {"A.2", 8, 2, Availability::NonUniform},
    {"A.3", 8, 2, Availability::TimeVarying}, {"B.1", 8, 8, Availability::Uniform},
    {"B.2", 8, 8, Availability::NonUniform},  {"B.3", 8, 8, Availability::TimeVarying},
    {"C.1", 12, 12, Availability::Uniform},   {"C.2", 12, 12, Availability::NonUniform},
    {"C.3", 12, 12, Availability::TimeVarying}, {"D", 6, 6, Availability::Alternating},
};

std::map<CoreId, double> first_cores_load(const Topology& topology, NodeId node, int count,
                                          double load) {
  std::map<CoreId, double> loads;
  const auto& cores = topology.node(node).cores;
  for (int i = 0; i < count && i < static_cast<int>(cores.size()); ++i) {
    loads[cores[static_cast<std::size_t>(i)]] = load;
  }
  return loads;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CatalogEntry& e : kCatalog) {
      out.emplace_back(e.name);
    }
    return out;
  }();
  return names;
}

Scenario build_scenario(std::string_view name, const DeskScale& scale) {
  const CatalogEntry* entry = nullptr;
  for (const CatalogEntry& e : kCatalog) {
    if (e.name == name) {
      entry = &e;
    }
  }
  if (entry == nullptr) {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  }

  Scenario s;
  s.name = std::string(name);
  s.topology = Topology::uniform(2, 14);
  s.available = CoreAvailability::first_cores(s.topology, {entry->cores_node0, entry->cores_node1});
  s.workload.n_threads = scale.n_threads;
  s.resources = default_resources();
  s.time_scale = scale.time_scale;

  const int k = scale.interfered_cores_per_node;
  auto both_nodes = [&] {
    auto loads = first_cores_load(s.topology, 0, k, scale.interference_load);
    loads.merge(first_cores_load(s.topology, 1, k, scale.interference_load));
    return loads;
  };

  switch (entry->availability) {
    case Availability::Uniform:
      break;
    case Availability::NonUniform:
      s.interference.phases.push_back({0.0, std::nullopt, both_nodes()});
      break;
    case Availability::TimeVarying:
      s.interference.phases.push_back({scale.onset, std::nullopt, both_nodes()});
      break;
    case Availability::Alternating: {
      // Alternate over alternation_span; the last half-period stays open.
      const double period = scale.alternation_period;
      const double span = scale.alternation_span;
      NodeId node = 0;
      for (double t = 0.0; t < span; t += period) {
        InterferencePhase phase{t, t + period,
                                first_cores_load(s.topology, node, k, scale.interference_load)};
        if (t + period >= span) {
          phase.end.reset();
        }
        s.interference.phases.push_back(std::move(phase));
        node = 1 - node;
      }
      break;
    }
  }

  switch (entry->name[0]) {
    case 'A': s.workload.work_per_thread = scale.work_small; break;
    case 'B': s.workload.work_per_thread = scale.work_medium; break;
    case 'C': s.workload.work_per_thread = scale.work_large; break;
    default: s.workload.work_per_thread = scale.work_alternating; break;
  }
  s.validate();
  return s;
}

}  // namespace numapin::harness
