#pragma once

#include <span>
#include <vector>

#include "numapin/scheduler/scheduler.hpp"

namespace numapin::scheduler {

/// Backend that carries out pinning decisions and reports per-thread speed.
/// The simulator implements it; an OS backend (affinity + mempolicy calls and
/// instruction counters) would implement the same two calls.
class Actuator {
 public:
  virtual ~Actuator() = default;

  /// Queue placement / memory-binding changes for the next interval.
  virtual void apply(std::span<const PinningCommand> commands) = 0;

  /// Run one interval and return the speed of every thread that was live
  /// during it. Empty once all threads have finished.
  virtual std::vector<Measurement> sample() = 0;
};

/// Measurement-driven loop around schedule_step: owns the learner states and
/// the random source of one run.
class ResourceManager {
 public:
  ResourceManager(const Assignment& initial, const CoreAvailability& available,
                  SchedulerParams params, SchedulerPlan plan, std::uint64_t seed,
                  bool master_thread = false);

  /// Commands that realise the initial placement.
  std::vector<PinningCommand> initial_commands(tracing::TraceSink* sink = nullptr) const;

  /// Consume one round of measurements and decide the next placement.
  std::vector<PinningCommand> decide(const std::vector<Measurement>& measurements,
                                     tracing::TraceSink* sink = nullptr);

  /// Drive `backend` until it reports no live threads. Returns rounds run.
  long run(Actuator& backend, tracing::TraceSink* sink = nullptr);

  const std::vector<ThreadSchedState>& states() const { return states_; }
  const SchedulerParams& params() const { return params_; }
  long round() const { return round_; }

 private:
  std::vector<ThreadSchedState> states_;
  SchedulerParams params_;
  SchedulerPlan plan_;
  Rng rng_;
  long round_ = 0;
};

}  // namespace numapin::scheduler
