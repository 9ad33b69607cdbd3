#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "numapin/core/scenario.hpp"
#include "numapin/simulator/simulator.hpp"

namespace numapin::harness {

/// Average processing speed of the running threads. Throws
/// std::invalid_argument for an empty input.
double objective(std::span<const double> speeds);

enum class Deviation { MeanAbsolute, Standard };

double mean(std::span<const double> xs);
/// Mean |x - mean| or the population standard deviation.
double deviation(std::span<const double> xs, Deviation kind);

/// One column of an experiment: a policy plus an optional memory-binding
/// threshold override for the learned scheduler.
struct Arm {
  std::string label;
  sim::Policy policy = sim::Policy::Learned;
  bool override_zeta = false;
  std::optional<double> zeta;
};

Arm os_arm();
Arm learned_arm();
/// Learned scheduler with memory binding at threshold `zeta` (nullopt: unbound).
Arm learned_arm(std::optional<double> zeta);

struct RunStats {
  std::string label;
  double mean_completion = 0.0;
  double deviation = 0.0;
  /// Mean over seeds of the per-run average thread speed.
  double avg_speed = 0.0;
  /// (baseline mean - mean) / baseline mean * 100; positive means faster.
  std::optional<double> diff_percent;
  std::vector<double> completions;
  std::vector<double> avg_speeds;
};

struct ExperimentOptions {
  int n_seeds = 20;
  std::uint64_t base_seed = 1;
  Deviation deviation = Deviation::MeanAbsolute;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned workers = 0;
  /// Label of the arm that diffs are taken against; empty picks the first
  /// OS-policy arm. No diffs are reported when no such arm exists.
  std::string baseline;
};

/// Percent improvement of `value` over `baseline`.
double diff_percent(double baseline, double value);

/// Seed of run i of an experiment: paired across arms.
std::uint64_t run_seed(const ExperimentOptions& options, int i);

/// Runs every (arm, seed) cell, concurrently, and reduces in (arm, seed)
/// order so results do not depend on scheduling.
std::vector<RunStats> run_experiment(const Scenario& scenario, const std::vector<Arm>& arms,
                                     const ExperimentOptions& options = {});

/// `scenario` with the arm's overrides applied.
Scenario apply_arm(const Scenario& scenario, const Arm& arm);

}  // namespace numapin::harness
