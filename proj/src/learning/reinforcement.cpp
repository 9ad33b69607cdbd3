#include "numapin/learning/reinforcement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "numapin/core/errors.hpp"
#include "numapin/core/log.hpp"

namespace numapin::learning {

RLState RLState::uniform(std::size_t n_actions, std::size_t current) {
  if (n_actions == 0) {
    throw ParameterError("reinforcement: empty action set");
  }
  return {std::vector<double>(n_actions, 1.0 / static_cast<double>(n_actions)), current};
}

RLState rl_update(RLState state, double reward, double epsilon) {
  if (state.current_action >= state.strategy.size()) {
    throw ParameterError("reinforcement: current action outside the strategy");
  }
  if (!(reward >= 0.0 && reward <= 1.0)) {
    log_warning("reinforcement: reward " + std::to_string(reward) + " clipped to [0, 1]");
    reward = std::isnan(reward) ? 0.0 : std::clamp(reward, 0.0, 1.0);
  }
  const double step = epsilon * reward;
  if (step == 0.0) {
    return state;
  }
  for (std::size_t a = 0; a < state.strategy.size(); ++a) {
    const double target = a == state.current_action ? 1.0 : 0.0;
    state.strategy[a] += step * (target - state.strategy[a]);
    if (state.strategy[a] < 0.0) {
      state.strategy[a] = 0.0;
    }
  }
  // The update preserves the sum analytically; renormalise away rounding drift.
  const double total = std::accumulate(state.strategy.begin(), state.strategy.end(), 0.0);
  for (double& p : state.strategy) {
    p /= total;
  }
  return state;
}

std::size_t rl_select_action(const RLState& state, double lambda, Rng& rng) {
  const std::size_t n = state.strategy.size();
  if (n == 0) {
    throw ParameterError("reinforcement: empty action set");
  }
  const double u = rng.uniform01();
  const double uniform_mass = lambda / static_cast<double>(n);
  double cumulative = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    cumulative += (1.0 - lambda) * state.strategy[a] + uniform_mass;
    if (u < cumulative) {
      return a;
    }
  }
  // u landed in the rounding gap above the final cumulative sum.
  for (std::size_t a = n; a-- > 0;) {
    if ((1.0 - lambda) * state.strategy[a] + uniform_mass > 0.0) {
      return a;
    }
  }
  return n - 1;
}

bool is_probability_vector(const std::vector<double>& p, double tol) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) {
      return false;
    }
    total += x;
  }
  return !p.empty() && std::abs(total - 1.0) <= tol;
}

}  // namespace numapin::learning
