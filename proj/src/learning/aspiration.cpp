#include "numapin/learning/aspiration.hpp"

#include <string>

#include "numapin/core/errors.hpp"

namespace numapin::learning {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Below: return "below";
    case Regime::Satisfied: return "satisfied";
    case Regime::Above: return "above";
  }
  return "?";
}

Regime classify(const AspirationState& state, double v_bar) {
  if (v_bar >= state.upper) {
    return Regime::Above;
  }
  if (v_bar <= state.lower) {
    return Regime::Below;
  }
  return Regime::Satisfied;
}

AspirationState initialize_benchmarks(AspirationState state, double v_bar, double eta) {
  if (!(eta > 1.0)) {
    throw ParameterError("benchmarks: eta must be > 1, got " + std::to_string(eta));
  }
  state.lower = v_bar / eta;
  state.upper = eta * v_bar;
  state.initialized = true;
  return state;
}

AspirationState benchmark_update(AspirationState state, double v_bar, double eta) {
  if (!(eta > 1.0)) {
    throw ParameterError("benchmarks: eta must be > 1, got " + std::to_string(eta));
  }
  if (!state.initialized) {
    return initialize_benchmarks(state, v_bar, eta);
  }
  switch (classify(state, v_bar)) {
    case Regime::Above:
      state.upper = v_bar;
      state.lower = v_bar / eta;
      break;
    case Regime::Below:
      state.lower = v_bar;
      state.upper = eta * v_bar;
      break;
    case Regime::Satisfied:
      break;
  }
  return state;
}

std::size_t uniform_alternative(std::size_t current, std::size_t n, Rng& rng) {
  if (n <= 1) {
    return current;
  }
  const std::size_t draw = rng.uniform_index(n - 1);
  return draw < current ? draw : draw + 1;
}

std::size_t al_select_action(const AspirationState& state, double v_bar, double lambda, Rng& rng) {
  if (state.action_set_size == 0) {
    throw ParameterError("aspiration: empty action set");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw ParameterError("aspiration: lambda must lie in [0, 1), got " + std::to_string(lambda));
  }
  const std::size_t n = state.action_set_size;
  if (n == 1 || v_bar >= state.upper) {
    return state.current_action;
  }
  if (v_bar < state.lower) {
    return uniform_alternative(state.current_action, n, rng);
  }
  if (rng.uniform01() < lambda) {
    return uniform_alternative(state.current_action, n, rng);
  }
  return state.current_action;
}

}  // namespace numapin::learning
