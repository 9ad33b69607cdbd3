#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numapin/core/params.hpp"
#include "numapin/core/resource_spec.hpp"
#include "numapin/core/topology.hpp"

namespace numapin {

/// Performance knobs of the simulated machine. Speeds in units of kSpeedUnit.
struct MachineModel {
  double core_capacity = 23.0;
  /// Speed multiplier for a thread whose memory lives on another node.
  double remote_penalty = 0.7;
  /// Relative standard deviation of multiplicative measurement noise.
  double noise_sigma = 0.05;

  void validate() const;
  bool operator==(const MachineModel&) const = default;
};

struct Workload {
  int n_threads = 1;
  /// Instructions per thread, in units of kSpeedUnit.
  double work_per_thread = 1.0;

  void validate() const;
  bool operator==(const Workload&) const = default;
};

/// Exogenous load active on [start, end). Load unit = one saturating process.
struct InterferencePhase {
  double start = 0.0;
  std::optional<double> end;
  std::map<CoreId, double> loads;

  bool active_at(double t) const { return t >= start && (!end || t < *end); }
  bool operator==(const InterferencePhase&) const = default;
};

struct InterferenceProfile {
  std::vector<InterferencePhase> phases;

  /// Summed load per core of all phases active at time t.
  std::map<CoreId, double> loads_at(double t) const;
  /// Throws ValidationError unless phases are ordered by start, have end > start
  /// and non-negative loads on cores of `topology`.
  void validate(const Topology& topology) const;

  bool operator==(const InterferenceProfile&) const = default;
};

/// Everything needed to run one experiment cell.
struct Scenario {
  std::string name;
  Topology topology;
  CoreAvailability available;
  Workload workload;
  InterferenceProfile interference;
  MachineModel machine;
  std::vector<ResourceSpec> resources;
  SchedulerParams params;
  /// Interference phases are scripted in unscaled seconds; simulated time t
  /// reads the profile at t / time_scale.
  double time_scale = 1.0;
  /// Simulated-time guard for run_to_completion, seconds.
  double horizon = 20000.0;
  /// Reserve the first available core for a master thread that is pinned
  /// there and excluded from learning.
  bool master_thread = false;

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

}  // namespace numapin
