#include "numapin/learning/estimator.hpp"

#include <algorithm>
#include <string>

#include "numapin/core/errors.hpp"

namespace numapin::learning {

EstimatorState estimator_update(EstimatorState state, double v, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ParameterError("estimator: epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(v >= 0.0)) {
    throw ParameterError("estimator: measured speed must be >= 0");
  }
  if (!state.initialized) {
    return {v, true};
  }
  state.v_bar += epsilon * (v - state.v_bar);
  return state;
}

Rates effective_rates(double v_bar, const SchedulerParams& params) {
  const double divisor = v_bar > 0.0 ? v_bar : 1.0;
  return {std::clamp(params.epsilon_scale / divisor, kMinRate, kMaxRate),
          std::clamp(params.lambda_scale / divisor, kMinRate, kMaxRate)};
}

}  // namespace numapin::learning
