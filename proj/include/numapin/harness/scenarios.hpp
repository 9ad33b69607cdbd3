#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "numapin/core/scenario.hpp"

namespace numapin::harness {

/// Sizing of the catalogued experiments. The defaults reproduce the testbed
/// time scale: 6125 units of work makes the uncontended 40-thread run on 16
/// cores last about 1065 s, and the interference load was fitted to the OS
/// baseline's completion times. Lower time_scale and work to shrink runs.
struct DeskScale {
  double time_scale = 1.0;
  /// Per-thread work for each availability level, units of kSpeedUnit.
  double work_small = 6125.0;
  double work_medium = 6125.0;
  double work_large = 6125.0;
  double work_alternating = 6125.0;
  /// Exogenous load placed on each interfered core.
  double interference_load = 1.5;
  /// Testbed time at which time-varying interference starts.
  double onset = 60.0;
  /// Testbed half-period of the alternating interference.
  double alternation_period = 120.0;
  /// Testbed time covered by alternating phases; the last phase stays open.
  double alternation_span = 3600.0;
  int interfered_cores_per_node = 6;
  int n_threads = 40;
};

/// Names of the catalogued experiments: A.1 .. C.3 and D.
const std::vector<std::string>& scenario_names();

/// Scenario of a catalogued experiment on the two-node, 28-core machine.
/// Throws std::invalid_argument for an unknown name.
Scenario build_scenario(std::string_view name, const DeskScale& scale = {});

}  // namespace numapin::harness
