#include "numapin/simulator/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "numapin/core/errors.hpp"

namespace numapin::sim {

SimState initial_state(const Scenario& scenario, std::uint64_t seed) {
  SimState s;
  s.rng = Rng(seed);
  s.balancer_rng = s.rng.split(0x6f73);
  s.threads.resize(static_cast<std::size_t>(scenario.workload.n_threads));
  for (SimThread& t : s.threads) {
    t.remaining = scenario.workload.work_per_thread;
  }
  return s;
}

std::map<CoreId, double> interference_at(const Scenario& scenario, double clock) {
  return scenario.interference.loads_at(clock / scenario.time_scale);
}

namespace {

std::map<CoreId, double> app_load(const SimState& state) {
  std::map<CoreId, double> load;
  for (const SimThread& t : state.threads) {
    if (t.running() && t.placement) {
      load[t.placement->core] += 1.0;
    }
  }
  return load;
}

}  // namespace

std::vector<double> speed_model(const SimState& state, const Scenario& scenario,
                                const std::map<CoreId, double>& interference) {
  const auto load = app_load(state);
  std::vector<double> speeds(state.threads.size(), 0.0);
  for (std::size_t i = 0; i < state.threads.size(); ++i) {
    const SimThread& t = state.threads[i];
    if (!t.running()) {
      continue;
    }
    if (!t.placement) {
      throw SimulationError("simulator: thread " + std::to_string(i) + " is not placed");
    }
    const CoreId core = t.placement->core;
    double total = load.at(core);
    if (auto it = interference.find(core); it != interference.end()) {
      total += it->second;
    }
    const NodeId exec_node = t.placement->node;
    const bool local = !t.memory_node || *t.memory_node == exec_node;
    speeds[i] = scenario.machine.core_capacity / total *
                (local ? 1.0 : scenario.machine.remote_penalty);
  }
  return speeds;
}

std::vector<double> measure(const std::vector<double>& speeds, double noise_sigma, Rng& rng) {
  std::vector<double> out(speeds.size());
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (noise_sigma == 0.0) {
      out[i] = speeds[i];
      continue;
    }
    out[i] = speeds[i] * std::max(0.0, 1.0 + noise_sigma * rng.normal());
  }
  return out;
}

namespace {

void check_command(const SimState& state, const Scenario& scenario, const PinningCommand& c) {
  if (c.thread_id < 0 || static_cast<std::size_t>(c.thread_id) >= state.threads.size()) {
    throw SimulationError("simulator: command for unknown thread " + std::to_string(c.thread_id));
  }
  if (!scenario.topology.has_core(c.core)) {
    throw SimulationError("simulator: core " + std::to_string(c.core) + " is not in the topology");
  }
  if (!scenario.available.contains(c.core)) {
    throw SimulationError("simulator: core " + std::to_string(c.core) + " is not available");
  }
  if (c.memory_node && !scenario.topology.has_node(*c.memory_node)) {
    throw SimulationError("simulator: unknown memory node " + std::to_string(*c.memory_node));
  }
}

}  // namespace

StepResult step(SimState& state, const Scenario& scenario,
                std::span<const PinningCommand> commands) {
  for (const PinningCommand& c : commands) {
    check_command(state, scenario, c);
  }
  for (const PinningCommand& c : commands) {
    SimThread& t = state.threads[static_cast<std::size_t>(c.thread_id)];
    const NodeId node = *scenario.topology.node_of(c.core);
    if (c.memory_node) {
      t.memory_node = c.memory_node;
      t.memory_bound = true;
    }
    t.placement = Placement{node, c.core, t.memory_bound ? t.memory_node : std::nullopt};
  }

  const double dt = scenario.params.interval;
  const double clock = static_cast<double>(state.step_index) * dt;
  const auto interference = interference_at(scenario, clock);
  StepResult result;
  result.true_speeds = speed_model(state, scenario, interference);
  result.executed.assign(state.threads.size(), 0.0);

  std::vector<double> live_speeds;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < state.threads.size(); ++i) {
    if (state.threads[i].running()) {
      live.push_back(i);
      live_speeds.push_back(result.true_speeds[i]);
    }
  }
  const std::vector<double> noisy = measure(live_speeds, scenario.machine.noise_sigma, state.rng);

  for (std::size_t k = 0; k < live.size(); ++k) {
    SimThread& t = state.threads[live[k]];
    if (!t.memory_node) {
      t.memory_node = t.placement->node;  // first touch
    }
    const double v = result.true_speeds[live[k]];
    const double can_do = v * dt;
    bool finished = false;
    if (can_do >= t.remaining) {
      result.executed[live[k]] = t.remaining;
      t.finish_time = clock + t.remaining / v;
      t.remaining = 0.0;
      finished = true;
    } else {
      result.executed[live[k]] = can_do;
      t.remaining -= can_do;
    }
    result.measurements.push_back({static_cast<ThreadId>(live[k]), noisy[k], finished});
  }
  ++state.step_index;
  state.clock = static_cast<double>(state.step_index) * dt;
  return result;
}

int os_rebalance(SimState& state, const Scenario& scenario) {
  const std::vector<CoreId> cores = scenario.available.all_cores();
  const double clock = static_cast<double>(state.step_index) * scenario.params.interval;
  const auto interference = interference_at(scenario, clock);

  std::map<CoreId, std::vector<std::size_t>> on_core;
  for (CoreId c : cores) {
    on_core[c];
  }
  for (std::size_t i = 0; i < state.threads.size(); ++i) {
    const SimThread& t = state.threads[i];
    if (t.running() && t.placement) {
      on_core[t.placement->core].push_back(i);
    }
  }
  auto load_of = [&](CoreId c) {
    auto it = interference.find(c);
    return static_cast<double>(on_core[c].size()) + (it == interference.end() ? 0.0 : it->second);
  };

  int moves = 0;
  for (;;) {
    // Most-loaded cores holding an app thread, and least-loaded cores.
    double hi = 0.0;
    double lo = 0.0;
    bool any_src = false;
    for (std::size_t k = 0; k < cores.size(); ++k) {
      const CoreId c = cores[k];
      const double l = load_of(c);
      if (!on_core[c].empty() && (!any_src || l > hi)) {
        hi = l;
        any_src = true;
      }
      if (k == 0 || l < lo) lo = l;
    }
    if (!any_src || !(hi - lo > 1.0)) {
      break;
    }
    std::vector<CoreId> sources;
    std::vector<CoreId> targets;
    for (CoreId c : cores) {
      const double l = load_of(c);
      if (!on_core[c].empty() && l == hi) sources.push_back(c);
      if (l == lo) targets.push_back(c);
    }
    // The balancer does not look at memory placement: ties are broken at random.
    const CoreId src = sources[state.balancer_rng.uniform_index(sources.size())];
    const CoreId dst = targets[state.balancer_rng.uniform_index(targets.size())];
    auto& from = on_core[src];
    const std::size_t pick = state.balancer_rng.uniform_index(from.size());
    const std::size_t thread = from[pick];
    from.erase(from.begin() + static_cast<std::ptrdiff_t>(pick));
    on_core[dst].push_back(thread);
    SimThread& t = state.threads[thread];
    t.placement->core = dst;
    t.placement->node = *scenario.topology.node_of(dst);
    ++moves;
  }
  return moves;
}

StepResult os_baseline_step(SimState& state, const Scenario& scenario) {
  os_rebalance(state, scenario);
  return step(state, scenario, {});
}

SimulatedMachine::SimulatedMachine(const Scenario& scenario, std::uint64_t seed)
    : scenario_(&scenario), state_(initial_state(scenario, seed)) {}

void SimulatedMachine::apply(std::span<const PinningCommand> commands) {
  pending_.insert(pending_.end(), commands.begin(), commands.end());
}

bool SimulatedMachine::done() const {
  return std::none_of(state_.threads.begin(), state_.threads.end(),
                      [](const SimThread& t) { return t.running(); });
}

std::vector<Measurement> SimulatedMachine::sample() {
  if (done()) {
    return {};
  }
  if (state_.clock > scenario_->horizon) {
    throw SimulationError("simulator: horizon of " + std::to_string(scenario_->horizon) +
                          " s exceeded");
  }
  last_ = step(state_, *scenario_, pending_);
  pending_.clear();
  return last_.measurements;
}

}  // namespace numapin::sim
