#include "numapin/core/scenario.hpp"

#include <string>

#include "numapin/core/errors.hpp"

namespace numapin {

void SchedulerParams::validate() const {
  if (!(eta > 1.0)) {
    throw ValidationError("params: eta must be > 1 (got " + std::to_string(eta) + ")");
  }
  if (zeta && !(*zeta >= 0.0 && *zeta <= 1.0)) {
    throw ValidationError("params: zeta must lie in [0, 1] (got " + std::to_string(*zeta) + ")");
  }
  if (!(interval > 0.0)) {
    throw ValidationError("params: interval must be > 0");
  }
  if (!(epsilon_scale > 0.0) || !(lambda_scale > 0.0)) {
    throw ValidationError("params: epsilon_scale and lambda_scale must be > 0");
  }
}

void MachineModel::validate() const {
  if (!(core_capacity > 0.0)) {
    throw ValidationError("machine: core_capacity must be > 0");
  }
  if (!(remote_penalty > 0.0 && remote_penalty <= 1.0)) {
    throw ValidationError("machine: remote_penalty must lie in (0, 1]");
  }
  if (!(noise_sigma >= 0.0)) {
    throw ValidationError("machine: noise_sigma must be >= 0");
  }
}

void Workload::validate() const {
  if (n_threads < 1) {
    throw ValidationError("workload: n_threads must be >= 1");
  }
  if (!(work_per_thread > 0.0)) {
    throw ValidationError("workload: work must be > 0");
  }
}

std::map<CoreId, double> InterferenceProfile::loads_at(double t) const {
  std::map<CoreId, double> out;
  for (const InterferencePhase& p : phases) {
    if (!p.active_at(t)) {
      continue;
    }
    for (const auto& [core, load] : p.loads) {
      out[core] += load;
    }
  }
  return out;
}

void InterferenceProfile::validate(const Topology& topology) const {
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const InterferencePhase& p = phases[i];
    if (p.start < 0.0) {
      throw ValidationError("interference: phase " + std::to_string(i) + " starts before 0");
    }
    if (i > 0 && p.start < phases[i - 1].start) {
      throw ValidationError("interference: phases must be ordered by start time");
    }
    if (p.end && !(*p.end > p.start)) {
      throw ValidationError("interference: phase " + std::to_string(i) + " ends before it starts");
    }
    for (const auto& [core, load] : p.loads) {
      if (!topology.has_core(core)) {
        throw ValidationError("interference: unknown core " + std::to_string(core));
      }
      if (!(load >= 0.0)) {
        throw ValidationError("interference: negative load on core " + std::to_string(core));
      }
    }
  }
}

void Scenario::validate() const {
  for (CoreId c : available.all_cores()) {
    if (!topology.has_core(c)) {
      throw ValidationError("scenario: available core " + std::to_string(c) +
                            " is not in the topology");
    }
  }
  workload.validate();
  machine.validate();
  params.validate();
  interference.validate(topology);
  validate_resources(resources);
  plan_from_resources(resources);
  if (!(time_scale > 0.0)) {
    throw ValidationError("scenario: time_scale must be > 0");
  }
  if (!(horizon > 0.0)) {
    throw ValidationError("scenario: horizon must be > 0");
  }
}

}  // namespace numapin
