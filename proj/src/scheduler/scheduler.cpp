#include "numapin/scheduler/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "numapin/tracing/trace.hpp"

namespace numapin::scheduler {

using learning::AspirationState;
using learning::Rates;
using learning::Regime;
using learning::RLState;

std::size_t LevelLearner::current_action() const {
  return std::visit([](const auto& s) { return s.current_action; }, state);
}

namespace {

std::size_t index_of(const std::vector<int>& actions, int id) {
  auto it = std::find(actions.begin(), actions.end(), id);
  if (it == actions.end()) {
    throw std::invalid_argument("scheduler: id " + std::to_string(id) + " not in action set");
  }
  return static_cast<std::size_t>(it - actions.begin());
}

LevelLearner make_learner(std::vector<int> actions, OptMethod method, std::size_t current) {
  LevelLearner learner;
  const std::size_t n = actions.size();
  learner.actions = std::move(actions);
  if (method == OptMethod::AL) {
    AspirationState s;
    s.action_set_size = n;
    s.current_action = current;
    learner.state = s;
  } else {
    learner.state = RLState::uniform(n, current);
  }
  return learner;
}

double regime_code(Regime r) {
  switch (r) {
    case Regime::Below: return 0.0;
    case Regime::Satisfied: return 1.0;
    case Regime::Above: return 2.0;
  }
  return -1.0;
}

struct LevelContext {
  long round;
  ThreadId thread;
  tracing::Level level;
  tracing::TraceSink* sink;
  double v_bar;
  double reward;
  Rates rates;
  double eta;
};

// Update a learner with this round's performance signal and pick the next
// action. Aspiration learners classify against the bracket carried into the
// round, then move the bracket.
std::size_t update_and_select(LevelLearner& learner, const LevelContext& ctx, Rng& rng) {
  if (auto* al = std::get_if<AspirationState>(&learner.state)) {
    std::size_t action = al->current_action;
    Regime regime = Regime::Satisfied;
    if (!al->initialized) {
      *al = learning::initialize_benchmarks(*al, ctx.v_bar, ctx.eta);
      action = learning::al_select_action(*al, ctx.v_bar, ctx.rates.lambda, rng);
    } else {
      regime = learning::classify(*al, ctx.v_bar);
      action = learning::al_select_action(*al, ctx.v_bar, ctx.rates.lambda, rng);
      *al = learning::benchmark_update(*al, ctx.v_bar, ctx.eta);
    }
    al->current_action = action;
    if (ctx.sink != nullptr) {
      ctx.sink->record({ctx.round, ctx.thread, ctx.level, tracing::Kind::Benchmark,
                        {{"v_bar", ctx.v_bar},
                         {"lower", al->lower},
                         {"upper", al->upper},
                         {"regime", regime_code(regime)}}});
    }
    return action;
  }
  auto& rl = std::get<RLState>(learner.state);
  rl = learning::rl_update(std::move(rl), ctx.reward, ctx.rates.epsilon);
  rl.current_action = learning::rl_select_action(rl, ctx.rates.lambda, rng);
  return rl.current_action;
}

// Action a learner proposes for a node the thread is entering this round.
std::size_t draw_on_entry(LevelLearner& learner, double lambda, Rng& rng) {
  if (auto* rl = std::get_if<RLState>(&learner.state)) {
    rl->current_action = learning::rl_select_action(*rl, lambda, rng);
    return rl->current_action;
  }
  return std::get<AspirationState>(learner.state).current_action;
}

void record_action(tracing::TraceSink* sink, long round, ThreadId thread, tracing::Level level,
                   int previous, int action, std::optional<double> extra_node,
                   std::optional<double> reward) {
  if (sink == nullptr) {
    return;
  }
  tracing::Event e{round, thread, level, tracing::Kind::Action,
                   {{"previous", previous},
                    {"action", action},
                    {"switched", previous == action ? 0.0 : 1.0}}};
  if (extra_node) e.payload["node"] = *extra_node;
  if (reward) e.payload["reward"] = *reward;
  sink->record(e);
}

}  // namespace

Assignment round_robin_assignment(const CoreAvailability& available, int n_threads,
                                  bool master_thread) {
  std::vector<std::pair<NodeId, CoreId>> slots;
  for (const auto& [node, cores] : available.by_node()) {
    for (CoreId c : cores) {
      slots.emplace_back(node, c);
    }
  }
  Assignment out;
  out.reserve(static_cast<std::size_t>(n_threads));
  std::size_t offset = 0;
  for (int t = 0; t < n_threads; ++t) {
    std::size_t slot;
    if (master_thread && t == 0) {
      slot = 0;
      offset = slots.size() > 1 ? 1 : 0;
    } else {
      const std::size_t pool = slots.size() - offset;
      const std::size_t k = static_cast<std::size_t>(t - (master_thread ? 1 : 0));
      slot = offset + k % pool;
    }
    out.push_back({slots[slot].first, slots[slot].second, std::nullopt});
  }
  return out;
}

std::vector<ThreadSchedState> init_states(const Assignment& initial,
                                          const CoreAvailability& available,
                                          const SchedulerPlan& plan, Rng& rng,
                                          bool master_thread) {
  const std::vector<NodeId> nodes = available.nodes();
  std::vector<ThreadSchedState> states;
  states.reserve(initial.size());
  for (std::size_t t = 0; t < initial.size(); ++t) {
    ThreadSchedState s;
    s.thread_id = static_cast<ThreadId>(t);
    s.fixed = master_thread && t == 0;
    s.placement = initial[t];
    s.node_learner = make_learner(nodes, plan.node_method, index_of(nodes, initial[t].node));
    for (NodeId node : nodes) {
      const std::vector<CoreId>& cores = available.cores_of(node);
      const std::size_t current = node == initial[t].node ? index_of(cores, initial[t].core)
                                                          : rng.uniform_index(cores.size());
      s.core_learners.emplace(node, make_learner(cores, plan.core_method, current));
    }
    states.push_back(std::move(s));
  }
  return states;
}

std::map<NodeId, int> node_occupancy(const std::map<ThreadId, Placement>& snapshot,
                                     const std::vector<NodeId>& nodes) {
  std::map<NodeId, int> counts;
  for (NodeId n : nodes) {
    counts[n] = 0;
  }
  for (const auto& entry : snapshot) {
    ++counts[entry.second.node];
  }
  return counts;
}

std::optional<NodeId> memory_binding_decision(ThreadId thread,
                                              const std::map<ThreadId, Placement>& snapshot,
                                              double zeta, int n_threads) {
  auto self = snapshot.find(thread);
  if (self == snapshot.end() || n_threads <= 0) {
    return std::nullopt;
  }
  const NodeId node = self->second.node;
  int on_node = 0;
  for (const auto& entry : snapshot) {
    on_node += entry.second.node == node ? 1 : 0;
  }
  const double share = static_cast<double>(on_node) / static_cast<double>(n_threads);
  if (share > zeta) {
    return node;
  }
  return std::nullopt;
}

StepOutput schedule_step(std::vector<ThreadSchedState> states,
                         const std::vector<Measurement>& measurements,
                         const SchedulerParams& params, const SchedulerPlan& plan, Rng& rng,
                         long round, tracing::TraceSink* sink) {
  std::map<ThreadId, const Measurement*> by_thread;
  for (const Measurement& m : measurements) {
    if (!(m.speed >= 0.0)) {
      throw std::invalid_argument("scheduler: negative speed for thread " +
                                  std::to_string(m.thread_id));
    }
    by_thread[m.thread_id] = &m;
  }

  // Pre-round snapshot for the occupancy rule.
  std::map<NodeId, int> occupancy;
  int live = 0;
  for (const ThreadSchedState& s : states) {
    if (s.active) {
      ++occupancy[s.placement.node];
      ++live;
    }
  }

  const std::uint64_t round_base = rng.next_u64();
  StepOutput out;

  for (ThreadSchedState& s : states) {
    if (!s.active) {
      continue;
    }
    auto found = by_thread.find(s.thread_id);
    if (found == by_thread.end()) {
      throw std::invalid_argument("scheduler: no measurement for live thread " +
                                  std::to_string(s.thread_id));
    }
    const Measurement& m = *found->second;
    if (s.fixed) {
      if (m.finished) s.active = false;
      continue;
    }
    Rng thread_rng = Rng::keyed(round_base, static_cast<std::uint64_t>(s.thread_id));

    // estimate()
    const Rates pre = learning::effective_rates(s.estimator.initialized ? s.estimator.v_bar : 0.0,
                                                params);
    s.estimator = learning::estimator_update(s.estimator, m.speed, pre.epsilon);
    s.max_speed = std::max(s.max_speed, m.speed);
    const double v_bar = s.estimator.v_bar;
    const Rates rates = learning::effective_rates(v_bar, params);
    const double reward = s.max_speed > 0.0 ? m.speed / s.max_speed : 0.0;
    if (sink != nullptr) {
      sink->record({round, s.thread_id, tracing::Level::Node, tracing::Kind::Measurement,
                    {{"v", m.speed}}});
      sink->record({round, s.thread_id, tracing::Level::Node, tracing::Kind::Estimate,
                    {{"v_bar", v_bar}, {"epsilon", pre.epsilon}, {"lambda", rates.lambda}}});
    }

    // optimize(): node level, then core level nested under the chosen node.
    const Placement before = s.placement;
    LevelContext ctx{round, s.thread_id, tracing::Level::Node, sink, v_bar, reward, rates,
                     params.eta};
    const std::size_t node_action = update_and_select(s.node_learner, ctx, thread_rng);
    const NodeId node = s.node_learner.actions[node_action];
    const bool node_rl = !s.node_learner.is_aspiration();
    record_action(sink, round, s.thread_id, tracing::Level::Node, before.node, node, std::nullopt,
                  node_rl ? std::optional<double>(reward) : std::nullopt);

    LevelLearner& core_learner = s.core_learners.at(node);
    std::size_t core_action;
    if (node != before.node) {
      core_action = draw_on_entry(core_learner, rates.lambda, thread_rng);
    } else {
      ctx.level = tracing::Level::Core;
      core_action = update_and_select(core_learner, ctx, thread_rng);
    }
    const CoreId core = core_learner.actions[core_action];
    record_action(sink, round, s.thread_id, tracing::Level::Core, before.core, core,
                  static_cast<double>(node),
                  core_learner.is_aspiration() ? std::nullopt : std::optional<double>(reward));
    s.placement.node = node;
    s.placement.core = core;

    // Memory binding against the pre-round snapshot, counting this thread at
    // its new node.
    std::optional<NodeId> bind;
    if (plan.memory_resource && params.zeta) {
      int on_node = occupancy[node] + (node != before.node ? 1 : 0);
      const double share = static_cast<double>(on_node) / static_cast<double>(live);
      if (share > *params.zeta && s.placement.memory_node != node) {
        bind = node;
        s.placement.memory_node = node;
        if (sink != nullptr) {
          sink->record({round, s.thread_id, tracing::Level::Memory, tracing::Kind::Bind,
                        {{"memory_node", node}, {"occupancy", share}}});
        }
      }
    }

    if (core != before.core || bind) {
      out.commands.push_back({s.thread_id, core, bind});
    }
    if (m.finished) {
      s.active = false;
    }
  }
  out.states = std::move(states);
  return out;
}

}  // namespace numapin::scheduler
