#include "numapin/core/topology.hpp"

#include <algorithm>
#include <string>

#include "numapin/core/errors.hpp"

namespace numapin {

Topology::Topology(std::vector<NumaNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) {
    throw ValidationError("topology: at least one NUMA node is required");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NumaNode& n = nodes_[i];
    if (!index_of_node_.emplace(n.id, i).second) {
      throw ValidationError("topology: duplicate node id " + std::to_string(n.id));
    }
    if (n.cores.empty()) {
      throw ValidationError("topology: node " + std::to_string(n.id) + " has no cores");
    }
    for (CoreId c : n.cores) {
      if (c < 0) {
        throw ValidationError("topology: negative core id " + std::to_string(c));
      }
      if (!node_of_core_.emplace(c, n.id).second) {
        throw ValidationError("topology: core " + std::to_string(c) +
                              " belongs to more than one node");
      }
    }
  }
}

Topology Topology::uniform(int n_nodes, int cores_per_node) {
  std::vector<NumaNode> nodes;
  for (int n = 0; n < n_nodes; ++n) {
    NumaNode node{n, {}};
    for (int c = 0; c < cores_per_node; ++c) {
      node.cores.push_back(n * cores_per_node + c);
    }
    nodes.push_back(std::move(node));
  }
  return Topology(std::move(nodes));
}

const NumaNode& Topology::node(NodeId id) const {
  auto it = index_of_node_.find(id);
  if (it == index_of_node_.end()) {
    throw ValidationError("topology: unknown node " + std::to_string(id));
  }
  return nodes_[it->second];
}

std::optional<NodeId> Topology::node_of(CoreId core) const {
  auto it = node_of_core_.find(core);
  if (it == node_of_core_.end()) {
    return std::nullopt;
  }
  return it->second;
}

CoreAvailability::CoreAvailability(const Topology& topology,
                                   std::map<NodeId, std::vector<CoreId>> cores) {
  for (auto& [node, list] : cores) {
    if (!topology.has_node(node)) {
      throw ValidationError("available cores: unknown node " + std::to_string(node));
    }
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw ValidationError("available cores: duplicate core under node " +
                            std::to_string(node));
    }
    for (CoreId c : list) {
      if (topology.node_of(c) != node) {
        throw ValidationError("available cores: core " + std::to_string(c) +
                              " is not part of node " + std::to_string(node));
      }
    }
    if (!list.empty()) {
      cores_.emplace(node, std::move(list));
    }
  }
  if (cores_.empty()) {
    throw ValidationError("available cores: at least one core must be available");
  }
}

CoreAvailability CoreAvailability::first_cores(const Topology& topology,
                                               const std::vector<int>& counts) {
  if (counts.size() != topology.nodes().size()) {
    throw ValidationError("available cores: expected one count per node");
  }
  std::map<NodeId, std::vector<CoreId>> cores;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const NumaNode& node = topology.nodes()[k];
    if (counts[k] < 0 || static_cast<std::size_t>(counts[k]) > node.cores.size()) {
      throw ValidationError("available cores: count " + std::to_string(counts[k]) +
                            " out of range for node " + std::to_string(node.id));
    }
    std::vector<CoreId> sorted = node.cores;
    std::sort(sorted.begin(), sorted.end());
    cores[node.id].assign(sorted.begin(), sorted.begin() + counts[k]);
  }
  return CoreAvailability(topology, std::move(cores));
}

CoreAvailability CoreAvailability::all(const Topology& topology) {
  std::map<NodeId, std::vector<CoreId>> cores;
  for (const NumaNode& n : topology.nodes()) {
    cores[n.id] = n.cores;
  }
  return CoreAvailability(topology, std::move(cores));
}

std::vector<NodeId> CoreAvailability::nodes() const {
  std::vector<NodeId> out;
  out.reserve(cores_.size());
  for (const auto& entry : cores_) {
    out.push_back(entry.first);
  }
  return out;
}

const std::vector<CoreId>& CoreAvailability::cores_of(NodeId node) const {
  static const std::vector<CoreId> kNone;
  auto it = cores_.find(node);
  return it == cores_.end() ? kNone : it->second;
}

std::vector<CoreId> CoreAvailability::all_cores() const {
  std::vector<CoreId> out;
  for (const auto& entry : cores_) {
    out.insert(out.end(), entry.second.begin(), entry.second.end());
  }
  return out;
}

bool CoreAvailability::contains(CoreId core) const {
  for (const auto& entry : cores_) {
    if (std::binary_search(entry.second.begin(), entry.second.end(), core)) {
      return true;
    }
  }
  return false;
}

std::size_t CoreAvailability::size() const {
  std::size_t n = 0;
  for (const auto& entry : cores_) {
    n += entry.second.size();
  }
  return n;
}

}  // namespace numapin
