#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "numapin/core/assignment.hpp"
#include "numapin/core/params.hpp"
#include "numapin/core/resource_spec.hpp"
#include "numapin/core/rng.hpp"
#include "numapin/core/topology.hpp"
#include "numapin/learning/aspiration.hpp"
#include "numapin/learning/estimator.hpp"
#include "numapin/learning/reinforcement.hpp"

namespace numapin::tracing {
class TraceSink;
}

namespace numapin::scheduler {

using LearnerState = std::variant<learning::AspirationState, learning::RLState>;

/// Learner of one decision level. `actions` maps an action index to the
/// node id (node level) or core id (core level) it stands for.
struct LevelLearner {
  std::vector<int> actions;
  LearnerState state;

  std::size_t current_action() const;
  int current_id() const { return actions.at(current_action()); }
  bool is_aspiration() const { return std::holds_alternative<learning::AspirationState>(state); }
};

/// Per-thread history summary: estimator, node-level learner and one
/// core-level learner per available node, plus the current placement.
struct ThreadSchedState {
  ThreadId thread_id = 0;
  /// False once the thread has finished its work.
  bool active = true;
  /// Master thread: kept on its core and excluded from learning.
  bool fixed = false;
  learning::EstimatorState estimator;
  /// Running maximum of measured speed; normalises RL rewards.
  double max_speed = 0.0;
  LevelLearner node_learner;
  std::map<NodeId, LevelLearner> core_learners;
  Placement placement;
};

struct PinningCommand {
  ThreadId thread_id = 0;
  CoreId core = 0;
  /// Node to bind the thread's memory to; nullopt leaves memory where it is.
  std::optional<NodeId> memory_node;

  bool operator==(const PinningCommand&) const = default;
};

struct Measurement {
  ThreadId thread_id = 0;
  /// Speed over the last interval, kSpeedUnit units.
  double speed = 0.0;
  /// The thread completed its work during the interval.
  bool finished = false;
};

/// Threads 0..n-1 spread round-robin over the available cores, ordered by node
/// then core id. With `master_thread`, thread 0 keeps the first available
/// core to itself and the others start from the second.
Assignment round_robin_assignment(const CoreAvailability& available, int n_threads,
                                  bool master_thread = false);

/// Fresh learner states whose incumbent actions reproduce `initial`.
/// Core learners of the other nodes start from a random core.
std::vector<ThreadSchedState> init_states(const Assignment& initial,
                                          const CoreAvailability& available,
                                          const SchedulerPlan& plan, Rng& rng,
                                          bool master_thread = false);

struct StepOutput {
  std::vector<ThreadSchedState> states;
  std::vector<PinningCommand> commands;
};

/// One scheduling round. Every active non-fixed thread runs, in order:
/// estimator update, node-level update and selection, then either a draw from
/// the entered node's core learner (node switch) or a core-level update and
/// selection within its node, then the memory-binding rule. Commands are
/// emitted for threads whose core or bound memory node changes.
///
/// Threads never read each other's learners; occupancy for the binding rule
/// comes from the placement snapshot taken before the round. The random
/// source is advanced exactly once per round and split per thread.
///
/// Throws std::invalid_argument when an active thread lacks a measurement.
StepOutput schedule_step(std::vector<ThreadSchedState> states,
                         const std::vector<Measurement>& measurements,
                         const SchedulerParams& params, const SchedulerPlan& plan, Rng& rng,
                         long round = 1, tracing::TraceSink* sink = nullptr);

/// Live-thread count per node; every node in `nodes` is present.
std::map<NodeId, int> node_occupancy(const std::map<ThreadId, Placement>& snapshot,
                                     const std::vector<NodeId>& nodes);

/// Bind the thread's memory to its node iff the share of the `n_threads`
/// live threads on that node strictly exceeds zeta; nullopt means no-op.
std::optional<NodeId> memory_binding_decision(ThreadId thread,
                                              const std::map<ThreadId, Placement>& snapshot,
                                              double zeta, int n_threads);

}  // namespace numapin::scheduler
