#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace numapin {

enum class OptCriterion { ProcessingSpeed };
enum class EstMethod { RL };
/// Optimisation method of a resource level: perturbed reinforcement learning
/// or aspiration learning.
enum class OptMethod { RL, AL };

std::string_view to_string(OptCriterion c);
std::string_view to_string(EstMethod m);
std::string_view to_string(OptMethod m);
std::optional<OptCriterion> parse_opt_criterion(std::string_view s);
std::optional<EstMethod> parse_est_method(std::string_view s);
std::optional<OptMethod> parse_opt_method(std::string_view s);

inline constexpr std::string_view kNumaBandwidth = "NUMA_BANDWIDTH";
inline constexpr std::string_view kNumaMemory = "NUMA_MEMORY";
inline constexpr std::string_view kCpuBandwidth = "CPU_BANDWIDTH";

/// One optimised resource and, optionally, the resource nested under it.
struct ResourceSpec {
  std::string name;
  OptCriterion opt_criterion = OptCriterion::ProcessingSpeed;
  EstMethod est_method = EstMethod::RL;
  OptMethod opt_method = OptMethod::AL;
  std::shared_ptr<const ResourceSpec> child;

  /// 1 for a leaf, 1 + child depth otherwise.
  int depth() const { return child ? 1 + child->depth() : 1; }

  bool operator==(const ResourceSpec& other) const;
};

inline constexpr int kDefaultMaxResourceDepth = 2;

/// Throws ValidationError on an empty list, an unknown resource name, a
/// duplicate top-level resource or a tree deeper than `max_depth`.
void validate_resources(const std::vector<ResourceSpec>& resources,
                        int max_depth = kDefaultMaxResourceDepth);

/// NUMA_BANDWIDTH (RL) with a CPU_BANDWIDTH child (AL), plus NUMA_MEMORY (AL).
std::vector<ResourceSpec> default_resources();

/// The level methods the two-level scheduler runs, extracted from a resource list.
struct SchedulerPlan {
  OptMethod node_method = OptMethod::RL;
  OptMethod core_method = OptMethod::AL;
  bool memory_resource = false;
};

/// Requires a NUMA_BANDWIDTH resource whose child is CPU_BANDWIDTH.
SchedulerPlan plan_from_resources(const std::vector<ResourceSpec>& resources);

}  // namespace numapin
