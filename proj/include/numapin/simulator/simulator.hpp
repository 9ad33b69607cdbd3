#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "numapin/core/assignment.hpp"
#include "numapin/core/rng.hpp"
#include "numapin/core/scenario.hpp"
#include "numapin/scheduler/actuation.hpp"
#include "numapin/scheduler/scheduler.hpp"
#include "numapin/tracing/trace.hpp"

namespace numapin::sim {

using scheduler::Measurement;
using scheduler::PinningCommand;

struct SimThread {
  double remaining = 0.0;
  /// Unset until the first command places the thread.
  std::optional<Placement> placement;
  /// Node holding the thread's memory: first-touch node, or the bound node.
  std::optional<NodeId> memory_node;
  bool memory_bound = false;
  std::optional<double> finish_time;

  bool running() const { return remaining > 0.0; }
};

struct SimState {
  long step_index = 0;
  double clock = 0.0;
  std::vector<SimThread> threads;
  /// Measurement noise.
  Rng rng;
  /// Tie-breaking of the OS baseline's balancer.
  Rng balancer_rng;
};

SimState initial_state(const Scenario& scenario, std::uint64_t seed);

/// Exogenous load per core at simulated time `clock`.
std::map<CoreId, double> interference_at(const Scenario& scenario, double clock);

/// Processor-sharing speed of every thread (0 for finished ones):
///   v_i = capacity / load(core_i) * (1 if memory is local else remote_penalty)
/// where load = running app threads on the core + interference on the core.
/// A running thread without memory counts as local (it is about to first-touch).
/// Throws SimulationError for a running thread that has not been placed.
std::vector<double> speed_model(const SimState& state, const Scenario& scenario,
                                const std::map<CoreId, double>& interference);

/// v * max(0, 1 + sigma * N(0, 1)), one normal draw per entry.
std::vector<double> measure(const std::vector<double>& speeds, double noise_sigma, Rng& rng);

struct StepResult {
  std::vector<Measurement> measurements;
  /// Noise-free speeds during the interval, indexed by thread id.
  std::vector<double> true_speeds;
  /// Work executed during the interval, indexed by thread id.
  std::vector<double> executed;
};

/// Applies `commands`, runs one scheduling interval and advances the clock.
/// Threads that run out of work mid-interval finish at their exact crossing
/// time; their load disappears from the next interval. Illegal commands
/// (unknown thread, core outside the topology or the available set) throw
/// SimulationError before anything changes.
StepResult step(SimState& state, const Scenario& scenario,
                std::span<const PinningCommand> commands);

/// Greedy load balancing over the available cores: while the most-loaded core
/// holding an app thread exceeds the least-loaded core by more than one unit,
/// move one thread across. Interference counts toward load; memory locality
/// is ignored. Ties between cores, and the choice of which thread leaves the
/// source core, are drawn from state.balancer_rng.
/// Returns the number of moves.
int os_rebalance(SimState& state, const Scenario& scenario);

/// os_rebalance followed by step.
StepResult os_baseline_step(SimState& state, const Scenario& scenario);

/// Simulator backend of the actuation contract.
class SimulatedMachine : public scheduler::Actuator {
 public:
  SimulatedMachine(const Scenario& scenario, std::uint64_t seed);

  void apply(std::span<const PinningCommand> commands) override;
  std::vector<Measurement> sample() override;

  const SimState& state() const { return state_; }
  const StepResult& last_step() const { return last_; }
  bool done() const;

 private:
  const Scenario* scenario_;
  SimState state_;
  std::vector<PinningCommand> pending_;
  StepResult last_;
};

enum class Policy { Learned, Os, Static };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view s);

/// One row of the per-interval CSV trace.
struct TraceRow {
  long step = 0;
  double clock = 0.0;
  ThreadId thread = 0;
  NodeId node = 0;
  CoreId core = 0;
  std::optional<NodeId> memory_node;
  double v_true = 0.0;
  double v_measured = 0.0;
  std::optional<double> v_bar;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<learning::Regime> regime;
  bool switched_node = false;
  bool switched_core = false;
};

struct RunOptions {
  /// Placement used by Policy::Static; random uniform pinning when unset.
  std::optional<Assignment> static_assignment;
  /// Collect per-interval rows.
  bool record_rows = false;
  /// Decision log of the learned policy.
  tracing::TraceSink* sink = nullptr;
  /// Stop after this many intervals even if work remains. Unfinished threads
  /// then count the final clock as their finish time.
  std::optional<long> max_steps;
};

struct RunResult {
  double completion_time = 0.0;
  std::vector<double> finish_times;
  /// Mean over threads of work / lifetime.
  double avg_speed = 0.0;
  long steps = 0;
  std::vector<TraceRow> rows;
  /// Mean true speed of live threads per interval.
  std::vector<double> objective_by_step;
};

/// Runs `scenario` under `policy` until every thread has finished (or
/// options.max_steps intervals have run). Throws
/// SimulationError if the clock passes scenario.horizon.
RunResult run_to_completion(const Scenario& scenario, Policy policy, std::uint64_t seed,
                            const RunOptions& options = {});

/// Re-applies the actions of a decision log to a fresh simulator and returns,
/// per round k >= 1, the speeds of the threads measured in that round (ordered
/// as logged). Only meaningful for noise-free scenarios.
std::vector<std::vector<double>> replay_speeds(const Scenario& scenario,
                                               const std::vector<tracing::Event>& events);

}  // namespace numapin::sim
