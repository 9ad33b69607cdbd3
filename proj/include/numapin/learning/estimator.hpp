#pragma once

#include "numapin/core/params.hpp"

namespace numapin::learning {

/// Discounted running average of a thread's measured speed (kSpeedUnit units).
struct EstimatorState {
  double v_bar = 0.0;
  bool initialized = false;
};

/// v_bar' = v_bar + epsilon * (v - v_bar). The first measurement seeds v_bar.
/// Throws ParameterError unless epsilon is in (0, 1] and v >= 0.
EstimatorState estimator_update(EstimatorState state, double v, double epsilon);

struct Rates {
  double epsilon = 0.0;
  double lambda = 0.0;
};

inline constexpr double kMinRate = 1e-4;
inline constexpr double kMaxRate = 1.0;

/// Speed-normalised step size and experimentation probability:
///   epsilon = clip(epsilon_scale / v_bar, kMinRate, kMaxRate)
///   lambda  = clip(lambda_scale  / v_bar, kMinRate, kMaxRate)
/// with v_bar in kSpeedUnit units. A non-positive v_bar (nothing measured
/// yet) yields the unscaled values, clipped the same way.
Rates effective_rates(double v_bar, const SchedulerParams& params);

}  // namespace numapin::learning
