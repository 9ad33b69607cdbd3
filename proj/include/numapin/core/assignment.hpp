#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numapin/core/topology.hpp"

namespace numapin {

/// Placement of one thread: the NUMA node it chose, the core within that node
/// and, when bound, the node holding its memory.
struct Placement {
  NodeId node = 0;
  CoreId core = 0;
  std::optional<NodeId> memory_node;

  bool operator==(const Placement&) const = default;
};

/// Assignment profile indexed by thread id.
using Assignment = std::vector<Placement>;

enum class ViolationKind { UnknownNode, UnknownCore, CoreNotInNode, CoreUnavailable, UnknownMemoryNode };

struct Violation {
  ThreadId thread = 0;
  ViolationKind kind = ViolationKind::UnknownCore;
  std::string message;
};

std::string_view to_string(ViolationKind kind);

/// Every invariant violated by `a`; empty means the assignment is legal.
std::vector<Violation> validate_assignment(const Assignment& a, const Topology& topology,
                                           const CoreAvailability& available);

/// Same checks for a single placement.
std::vector<Violation> validate_placement(ThreadId thread, const Placement& p,
                                          const Topology& topology,
                                          const CoreAvailability& available);

}  // namespace numapin
