#pragma once

#include <cstddef>
#include <string_view>

#include "numapin/core/rng.hpp"

namespace numapin::learning {

/// Benchmark bracket [lower, upper] of an aspiration learner plus its
/// incumbent action.
struct AspirationState {
  double upper = 0.0;
  double lower = 0.0;
  std::size_t current_action = 0;
  std::size_t action_set_size = 1;
  bool initialized = false;
};

/// Where a running average sits relative to a bracket.
///   Below:     v_bar <= lower  (lower reset, random switch)
///   Satisfied: lower < v_bar < upper
///   Above:     v_bar >= upper  (upper raised, action locked)
/// Ties on either edge go to the outer regime.
enum class Regime { Below, Satisfied, Above };

std::string_view to_string(Regime r);

Regime classify(const AspirationState& state, double v_bar);

/// Bracket [v_bar / eta, eta * v_bar]: starts the learner in the satisfied regime.
AspirationState initialize_benchmarks(AspirationState state, double v_bar, double eta);

/// One benchmark step:
///   Above:     upper = v_bar, lower = v_bar / eta
///   Satisfied: unchanged
///   Below:     lower = v_bar, upper = eta * v_bar
/// An uninitialised state is initialised instead. Throws ParameterError for eta <= 1.
AspirationState benchmark_update(AspirationState state, double v_bar, double eta);

/// Aspiration action rule:
///   v_bar <  lower:          uniform over the alternatives to current_action
///   lower <= v_bar < upper:  current_action w.p. 1 - lambda, else uniform alternative
///   v_bar >= upper:          current_action
/// With a single action the current one is always returned. Throws
/// ParameterError for an empty action set or lambda outside [0, 1).
std::size_t al_select_action(const AspirationState& state, double v_bar, double lambda, Rng& rng);

/// Uniform draw over [0, n) excluding `current`; `current` when n == 1.
std::size_t uniform_alternative(std::size_t current, std::size_t n, Rng& rng);

}  // namespace numapin::learning
