#pragma once

#include <cstddef>
#include <vector>

#include "numapin/core/rng.hpp"

namespace numapin::learning {

/// Mixed strategy over an action set plus the action last played.
struct RLState {
  std::vector<double> strategy;
  std::size_t current_action = 0;

  static RLState uniform(std::size_t n_actions, std::size_t current = 0);
};

/// Linear reward-inaction step on the simplex:
///   strategy' = strategy + epsilon * reward * (e_current - strategy)
/// A reward outside [0, 1] is clipped and a warning is logged.
RLState rl_update(RLState state, double reward, double epsilon);

/// Samples from (1 - lambda) * strategy + lambda * uniform.
std::size_t rl_select_action(const RLState& state, double lambda, Rng& rng);

/// True when entries are >= 0 and sum to 1 within `tol`.
bool is_probability_vector(const std::vector<double>& p, double tol = 1e-9);

}  // namespace numapin::learning
