#include <algorithm>
#include <numeric>
#include <string>

#include "numapin/core/errors.hpp"
#include "numapin/simulator/simulator.hpp"

namespace numapin::sim {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Learned: return "learned";
    case Policy::Os: return "os";
    case Policy::Static: return "static";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view s) {
  for (Policy p : {Policy::Learned, Policy::Os, Policy::Static}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

namespace {

using scheduler::ThreadSchedState;

// Learner whose bracket is reported in the CSV trace: the core learner of
// the thread's node when it is an aspiration learner, else the node learner.
const learning::AspirationState* reported_bracket(const ThreadSchedState& s, NodeId node) {
  if (auto it = s.core_learners.find(node); it != s.core_learners.end()) {
    if (auto* al = std::get_if<learning::AspirationState>(&it->second.state)) {
      return al;
    }
  }
  return std::get_if<learning::AspirationState>(&s.node_learner.state);
}

Assignment random_assignment(const Scenario& scenario, Rng& rng) {
  const std::vector<CoreId> cores = scenario.available.all_cores();
  Assignment a;
  for (int t = 0; t < scenario.workload.n_threads; ++t) {
    const CoreId c = cores[rng.uniform_index(cores.size())];
    a.push_back({*scenario.topology.node_of(c), c, std::nullopt});
  }
  return a;
}

std::vector<PinningCommand> to_commands(const Assignment& a) {
  std::vector<PinningCommand> out;
  for (std::size_t t = 0; t < a.size(); ++t) {
    out.push_back({static_cast<ThreadId>(t), a[t].core, a[t].memory_node});
  }
  return out;
}

class Recorder {
 public:
  Recorder(bool enabled, RunResult& result) : enabled_(enabled), result_(result) {}

  void add(const SimState& state, const StepResult& step, long index, double clock,
           const std::vector<std::optional<Placement>>& previous,
           const std::vector<ThreadSchedState>* learned,
           const std::vector<learning::AspirationState>* carried) {
    double total = 0.0;
    for (const Measurement& m : step.measurements) {
      total += step.true_speeds[static_cast<std::size_t>(m.thread_id)];
    }
    if (!step.measurements.empty()) {
      result_.objective_by_step.push_back(total / static_cast<double>(step.measurements.size()));
    }
    if (!enabled_) {
      return;
    }
    for (const Measurement& m : step.measurements) {
      const auto t = static_cast<std::size_t>(m.thread_id);
      const SimThread& th = state.threads[t];
      TraceRow row;
      row.step = index;
      row.clock = clock;
      row.thread = m.thread_id;
      row.node = th.placement->node;
      row.core = th.placement->core;
      row.memory_node = th.memory_node;
      row.v_true = step.true_speeds[t];
      row.v_measured = m.speed;
      if (previous[t]) {
        row.switched_node = previous[t]->node != row.node;
        row.switched_core = previous[t]->core != row.core;
      }
      if (learned != nullptr && !(*learned)[t].fixed) {
        const ThreadSchedState& s = (*learned)[t];
        row.v_bar = s.estimator.v_bar;
        if (const auto* al = reported_bracket(s, row.node)) {
          row.lower = al->lower;
          row.upper = al->upper;
          if (carried != nullptr && (*carried)[t].initialized) {
            row.regime = learning::classify((*carried)[t], s.estimator.v_bar);
          } else {
            row.regime = learning::Regime::Satisfied;
          }
        }
      }
      result_.rows.push_back(row);
    }
  }

 private:
  bool enabled_;
  RunResult& result_;
};

std::vector<std::optional<Placement>> placements(const SimState& state) {
  std::vector<std::optional<Placement>> out;
  out.reserve(state.threads.size());
  for (const SimThread& t : state.threads) {
    out.push_back(t.placement);
  }
  return out;
}

void finalize(const Scenario& scenario, const SimState& state, RunResult& result) {
  result.steps = state.step_index;
  double sum_speed = 0.0;
  for (const SimThread& t : state.threads) {
    const double finish = t.finish_time.value_or(state.clock);
    result.finish_times.push_back(finish);
    result.completion_time = std::max(result.completion_time, finish);
    sum_speed += scenario.workload.work_per_thread / finish;
  }
  result.avg_speed = sum_speed / static_cast<double>(state.threads.size());
}

void check_horizon(const Scenario& scenario, const SimState& state) {
  if (state.clock > scenario.horizon) {
    throw SimulationError("simulator: horizon of " + std::to_string(scenario.horizon) +
                          " s exceeded in scenario '" + scenario.name + "'");
  }
}

bool reached(const RunOptions& options, const SimState& state) {
  return options.max_steps && state.step_index >= *options.max_steps;
}

bool all_done(const SimState& state) {
  return std::none_of(state.threads.begin(), state.threads.end(),
                      [](const SimThread& t) { return t.running(); });
}

}  // namespace

RunResult run_to_completion(const Scenario& scenario, Policy policy, std::uint64_t seed,
                            const RunOptions& options) {
  scenario.validate();
  RunResult result;
  Recorder recorder(options.record_rows, result);
  // Independent streams for the machine (noise) and the policy.
  Rng root(seed);
  const std::uint64_t machine_seed = root.next_u64();
  const std::uint64_t policy_seed = root.next_u64();
  const int n = scenario.workload.n_threads;

  if (policy == Policy::Learned) {
    const Assignment initial =
        scheduler::round_robin_assignment(scenario.available, n, scenario.master_thread);
    scheduler::ResourceManager manager(initial, scenario.available, scenario.params,
                                       plan_from_resources(scenario.resources),
                                       policy_seed, scenario.master_thread);
    SimulatedMachine machine(scenario, machine_seed);
    machine.apply(manager.initial_commands(options.sink));
    std::vector<std::optional<Placement>> previous(static_cast<std::size_t>(n));
    std::vector<learning::AspirationState> carried(static_cast<std::size_t>(n));
    for (;;) {
      if (reached(options, machine.state())) {
        break;
      }
      check_horizon(scenario, machine.state());
      const long index = machine.state().step_index;
      const double clock = machine.state().clock;
      const std::vector<Measurement> measured = machine.sample();
      if (measured.empty()) {
        break;
      }
      const auto current = placements(machine.state());
      for (std::size_t t = 0; t < carried.size(); ++t) {
        const auto* al = reported_bracket(manager.states()[t], current[t]->node);
        carried[t] = al != nullptr ? *al : learning::AspirationState{};
      }
      machine.apply(manager.decide(measured, options.sink));
      recorder.add(machine.state(), machine.last_step(), index, clock, previous,
                   &manager.states(), &carried);
      previous = current;
    }
    finalize(scenario, machine.state(), result);
    if (options.sink != nullptr) {
      options.sink->flush();
    }
    return result;
  }

  SimState state = initial_state(scenario, machine_seed);
  Assignment start;
  if (policy == Policy::Os) {
    start = scheduler::round_robin_assignment(scenario.available, n, false);
  } else if (options.static_assignment) {
    start = *options.static_assignment;
  } else {
    Rng placement_rng(policy_seed);
    start = random_assignment(scenario, placement_rng);
  }
  if (static_cast<int>(start.size()) != n) {
    throw SimulationError("simulator: static assignment covers " + std::to_string(start.size()) +
                          " threads, scenario has " + std::to_string(n));
  }
  const std::vector<PinningCommand> first = to_commands(start);
  std::vector<std::optional<Placement>> previous(static_cast<std::size_t>(n));
  bool started = false;
  while (!all_done(state) && !reached(options, state)) {
    check_horizon(scenario, state);
    const long index = state.step_index;
    const double clock = state.clock;
    StepResult r;
    if (!started) {
      r = step(state, scenario, first);
      started = true;
    } else if (policy == Policy::Os) {
      r = os_baseline_step(state, scenario);
    } else {
      r = step(state, scenario, {});
    }
    const auto current = placements(state);
    recorder.add(state, r, index, clock, previous, nullptr, nullptr);
    previous = current;
  }
  finalize(scenario, state, result);
  return result;
}

std::vector<std::vector<double>> replay_speeds(const Scenario& scenario,
                                               const std::vector<tracing::Event>& events) {
  using tracing::Kind;
  using tracing::Level;
  struct Change {
    std::optional<CoreId> core;
    std::optional<NodeId> memory_node;
  };
  long last_round = 0;
  for (const tracing::Event& e : events) {
    last_round = std::max(last_round, e.step);
  }
  const auto rounds = static_cast<std::size_t>(last_round) + 1;
  std::vector<std::map<ThreadId, Change>> changes(rounds);
  std::vector<std::vector<ThreadId>> measured(rounds);
  for (const tracing::Event& e : events) {
    const auto k = static_cast<std::size_t>(e.step);
    if (e.kind == Kind::Measurement) {
      measured[k].push_back(e.thread_id);
    } else if (e.kind == Kind::Action && e.level == Level::Core) {
      if (k == 0 || e.payload.at("switched") != 0.0) {
        changes[k][e.thread_id].core = static_cast<CoreId>(e.payload.at("action"));
      }
    } else if (e.kind == Kind::Bind) {
      changes[k][e.thread_id].memory_node = static_cast<NodeId>(e.payload.at("memory_node"));
    }
  }

  SimState state = initial_state(scenario, 0);
  std::vector<std::vector<double>> out;
  for (std::size_t k = 1; k < rounds; ++k) {
    std::vector<PinningCommand> batch;
    for (const auto& [thread, change] : changes[k - 1]) {
      const SimThread& t = state.threads.at(static_cast<std::size_t>(thread));
      if (!change.core && !t.placement) {
        throw SimulationError("replay: bind for unplaced thread " + std::to_string(thread));
      }
      batch.push_back({thread, change.core ? *change.core : t.placement->core, change.memory_node});
    }
    const StepResult r = step(state, scenario, batch);
    std::vector<double> row;
    for (ThreadId t : measured[k]) {
      row.push_back(r.true_speeds.at(static_cast<std::size_t>(t)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace numapin::sim
