#include "numapin/harness/oracle.hpp"

#include <string>

#include "numapin/core/errors.hpp"
#include "numapin/harness/experiment.hpp"
#include "numapin/simulator/simulator.hpp"

namespace numapin::harness {

double steady_state_objective(const Scenario& scenario, const Assignment& assignment,
                              double clock) {
  sim::SimState state = sim::initial_state(scenario, 0);
  if (assignment.size() != state.threads.size()) {
    throw ParameterError("steady_state_objective: assignment covers " +
                         std::to_string(assignment.size()) + " of " +
                         std::to_string(state.threads.size()) + " threads");
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    sim::SimThread& t = state.threads[i];
    t.placement = assignment[i];
    t.memory_node = assignment[i].memory_node;
  }
  const auto speeds = sim::speed_model(state, scenario, sim::interference_at(scenario, clock));
  return objective(speeds);
}

OracleResult brute_force_optimum(const Scenario& scenario, double clock, std::size_t limit) {
  struct Choice {
    NodeId node;
    CoreId core;
    NodeId memory;
  };
  std::vector<Choice> choices;
  for (CoreId core : scenario.available.all_cores()) {
    for (const NumaNode& memory : scenario.topology.nodes()) {
      choices.push_back({*scenario.topology.node_of(core), core, memory.id});
    }
  }
  const std::size_t n = static_cast<std::size_t>(scenario.workload.n_threads);
  std::size_t space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (space > limit / choices.size()) {
      throw ParameterError("brute_force_optimum: more than " + std::to_string(limit) +
                           " assignments to enumerate");
    }
    space *= choices.size();
  }

  const auto interference = sim::interference_at(scenario, clock);
  sim::SimState state = sim::initial_state(scenario, 0);
  std::vector<std::size_t> digits(n, 0);
  OracleResult best;
  for (std::size_t k = 0; k < space; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Choice& c = choices[digits[i]];
      state.threads[i].placement = Placement{c.node, c.core, c.memory};
      state.threads[i].memory_node = c.memory;
    }
    const double f = objective(sim::speed_model(state, scenario, interference));
    ++best.evaluated;
    if (k == 0 || f > best.f) {
      best.f = f;
      best.assignment.clear();
      for (const sim::SimThread& t : state.threads) {
        best.assignment.push_back(*t.placement);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (++digits[i] < choices.size()) break;
      digits[i] = 0;
    }
  }
  return best;
}

}  // namespace numapin::harness
