#pragma once

#include <cstddef>

#include "numapin/core/assignment.hpp"
#include "numapin/core/scenario.hpp"

namespace numapin::harness {

/// Noise-free average speed of all threads when pinned as in `assignment`,
/// under the interference active at simulated time `clock`. An entry without
/// memory_node counts as local (its memory is first-touched where it runs).
double steady_state_objective(const Scenario& scenario, const Assignment& assignment,
                              double clock = 0.0);

struct OracleResult {
  Assignment assignment;
  double f = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kOracleLimit = 1'000'000;

/// Exhaustive argmax of steady_state_objective over every (core, memory node)
/// choice per thread. Ties keep the first assignment in enumeration order.
/// Throws ParameterError when the search space exceeds `limit`.
OracleResult brute_force_optimum(const Scenario& scenario, double clock = 0.0,
                                 std::size_t limit = kOracleLimit);

}  // namespace numapin::harness
