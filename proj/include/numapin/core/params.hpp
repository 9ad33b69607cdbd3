#pragma once

#include <optional>

namespace numapin {

/// Instructions per second represented by one speed unit. All speeds, work
/// amounts and capacities in this library are expressed in these units.
inline constexpr double kSpeedUnit = 1e8;

struct SchedulerParams {
  /// Step size of the running-average estimator is epsilon_scale / v_bar.
  double epsilon_scale = 0.3;
  /// Experimentation probability is lambda_scale / v_bar.
  double lambda_scale = 0.1;
  /// Benchmark bracket ratio; must exceed 1.
  double eta = 1.5;
  /// Memory-binding occupancy threshold in [0, 1]; nullopt leaves memory unbound.
  std::optional<double> zeta;
  /// Scheduling interval in seconds.
  double interval = 0.2;

  /// Throws ValidationError naming the first violated constraint.
  void validate() const;

  bool operator==(const SchedulerParams&) const = default;
};

}  // namespace numapin
