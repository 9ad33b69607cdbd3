#include "numapin/scheduler/actuation.hpp"

#include "numapin/tracing/trace.hpp"

namespace numapin::scheduler {

ResourceManager::ResourceManager(const Assignment& initial, const CoreAvailability& available,
                                 SchedulerParams params, SchedulerPlan plan, std::uint64_t seed,
                                 bool master_thread)
    : params_(params), plan_(plan), rng_(seed) {
  params_.validate();
  states_ = init_states(initial, available, plan_, rng_, master_thread);
}

std::vector<PinningCommand> ResourceManager::initial_commands(tracing::TraceSink* sink) const {
  std::vector<PinningCommand> out;
  out.reserve(states_.size());
  for (const ThreadSchedState& s : states_) {
    out.push_back({s.thread_id, s.placement.core, s.placement.memory_node});
    if (sink != nullptr) {
      sink->record({0, s.thread_id, tracing::Level::Core, tracing::Kind::Action,
                    {{"previous", s.placement.core},
                     {"action", s.placement.core},
                     {"switched", 0.0},
                     {"node", s.placement.node}}});
    }
  }
  return out;
}

std::vector<PinningCommand> ResourceManager::decide(const std::vector<Measurement>& measurements,
                                                    tracing::TraceSink* sink) {
  ++round_;
  StepOutput step =
      schedule_step(std::move(states_), measurements, params_, plan_, rng_, round_, sink);
  states_ = std::move(step.states);
  return std::move(step.commands);
}

long ResourceManager::run(Actuator& backend, tracing::TraceSink* sink) {
  const auto first = initial_commands(sink);
  backend.apply(first);
  for (;;) {
    const std::vector<Measurement> measured = backend.sample();
    if (measured.empty()) {
      break;
    }
    const auto commands = decide(measured, sink);
    backend.apply(commands);
  }
  return round_;
}

}  // namespace numapin::scheduler
