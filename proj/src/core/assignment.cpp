#include "numapin/core/assignment.hpp"

namespace numapin {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownNode: return "unknown node";
    case ViolationKind::UnknownCore: return "unknown core";
    case ViolationKind::CoreNotInNode: return "core not in node";
    case ViolationKind::CoreUnavailable: return "core unavailable";
    case ViolationKind::UnknownMemoryNode: return "unknown memory node";
  }
  return "?";
}

std::vector<Violation> validate_placement(ThreadId thread, const Placement& p,
                                          const Topology& topology,
                                          const CoreAvailability& available) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind) {
    out.push_back({thread, kind,
                   "thread " + std::to_string(thread) + ": " + std::string(to_string(kind)) +
                       " (node " + std::to_string(p.node) + ", core " + std::to_string(p.core) +
                       ")"});
  };
  if (!topology.has_node(p.node)) {
    add(ViolationKind::UnknownNode);
  }
  const auto owner = topology.node_of(p.core);
  if (!owner) {
    add(ViolationKind::UnknownCore);
  } else if (*owner != p.node) {
    add(ViolationKind::CoreNotInNode);
  }
  if (!available.contains(p.core)) {
    add(ViolationKind::CoreUnavailable);
  }
  if (p.memory_node && !topology.has_node(*p.memory_node)) {
    add(ViolationKind::UnknownMemoryNode);
  }
  return out;
}

std::vector<Violation> validate_assignment(const Assignment& a, const Topology& topology,
                                           const CoreAvailability& available) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto v = validate_placement(static_cast<ThreadId>(i), a[i], topology, available);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace numapin
