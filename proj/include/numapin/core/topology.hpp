#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace numapin {

using NodeId = int;
using CoreId = int;
using ThreadId = int;

struct NumaNode {
  NodeId id = 0;
  std::vector<CoreId> cores;

  bool operator==(const NumaNode&) const = default;
};

/// NUMA-node / core hierarchy of a machine. Construction validates that core
/// ids are globally unique and that every node owns at least one core.
class Topology {
 public:
  Topology() = default;
  explicit Topology(std::vector<NumaNode> nodes);

  /// `n_nodes` nodes of `cores_per_node` cores, numbered contiguously from 0.
  static Topology uniform(int n_nodes, int cores_per_node);

  const std::vector<NumaNode>& nodes() const { return nodes_; }
  const NumaNode& node(NodeId id) const;
  bool has_node(NodeId id) const { return index_of_node_.count(id) != 0; }
  bool has_core(CoreId core) const { return node_of_core_.count(core) != 0; }
  std::optional<NodeId> node_of(CoreId core) const;
  std::size_t core_count() const { return node_of_core_.size(); }

  bool operator==(const Topology& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<NumaNode> nodes_;
  std::map<NodeId, std::size_t> index_of_node_;
  std::map<CoreId, NodeId> node_of_core_;
};

/// Subset of a topology's cores that an application may use, grouped by node.
/// Nodes without available cores are absent.
class CoreAvailability {
 public:
  CoreAvailability() = default;
  CoreAvailability(const Topology& topology, std::map<NodeId, std::vector<CoreId>> cores);

  /// The first `counts[k]` cores of the k-th node, e.g. {8, 2}.
  static CoreAvailability first_cores(const Topology& topology, const std::vector<int>& counts);
  static CoreAvailability all(const Topology& topology);

  const std::map<NodeId, std::vector<CoreId>>& by_node() const { return cores_; }
  std::vector<NodeId> nodes() const;
  const std::vector<CoreId>& cores_of(NodeId node) const;
  std::vector<CoreId> all_cores() const;
  bool contains(CoreId core) const;
  std::size_t size() const;

  bool operator==(const CoreAvailability&) const = default;

 private:
  std::map<NodeId, std::vector<CoreId>> cores_;
};

}  // namespace numapin
