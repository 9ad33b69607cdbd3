#include "numapin/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace numapin::harness {

double objective(std::span<const double> speeds) {
  if (speeds.empty()) {
    throw std::invalid_argument("objective: no running threads");
  }
  return mean(speeds);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("mean: empty sample");
  }
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double deviation(std::span<const double> xs, Deviation kind) {
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) {
    acc += kind == Deviation::MeanAbsolute ? std::abs(x - m) : (x - m) * (x - m);
  }
  acc /= static_cast<double>(xs.size());
  return kind == Deviation::MeanAbsolute ? acc : std::sqrt(acc);
}

Arm os_arm() { return {"os", sim::Policy::Os, false, std::nullopt}; }

Arm learned_arm() { return {"learned", sim::Policy::Learned, false, std::nullopt}; }

Arm learned_arm(std::optional<double> zeta) {
  std::string label = "learned";
  if (zeta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "learned(zeta=%g)", *zeta);
    label = buf;
  } else {
    label = "learned(unbound)";
  }
  return {label, sim::Policy::Learned, true, zeta};
}

double diff_percent(double baseline, double value) {
  if (baseline == 0.0) {
    throw std::invalid_argument("diff_percent: zero baseline");
  }
  return (baseline - value) / baseline * 100.0;
}

std::uint64_t run_seed(const ExperimentOptions& options, int i) {
  return options.base_seed + static_cast<std::uint64_t>(i);
}

Scenario apply_arm(const Scenario& scenario, const Arm& arm) {
  Scenario s = scenario;
  if (arm.override_zeta) {
    s.params.zeta = arm.zeta;
  }
  return s;
}

std::vector<RunStats> run_experiment(const Scenario& scenario, const std::vector<Arm>& arms,
                                     const ExperimentOptions& options) {
  if (options.n_seeds < 1) {
    throw std::invalid_argument("run_experiment: n_seeds must be at least 1");
  }
  std::vector<Scenario> variants;
  variants.reserve(arms.size());
  for (const Arm& arm : arms) {
    variants.push_back(apply_arm(scenario, arm));
  }

  const std::size_t seeds = static_cast<std::size_t>(options.n_seeds);
  const std::size_t cells = arms.size() * seeds;
  std::vector<sim::RunResult> results(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= cells) {
        return;
      }
      const std::size_t a = cell / seeds;
      const int i = static_cast<int>(cell % seeds);
      try {
        results[cell] =
            sim::run_to_completion(variants[a], arms[a].policy, run_seed(options, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n_workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(cells)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<RunStats> stats;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    RunStats s;
    s.label = arms[a].label;
    for (std::size_t i = 0; i < seeds; ++i) {
      s.completions.push_back(results[a * seeds + i].completion_time);
      s.avg_speeds.push_back(results[a * seeds + i].avg_speed);
    }
    s.mean_completion = mean(s.completions);
    s.deviation = deviation(s.completions, options.deviation);
    s.avg_speed = mean(s.avg_speeds);
    stats.push_back(std::move(s));
  }

  std::optional<std::size_t> base;
  for (std::size_t a = 0; a < arms.size() && !base; ++a) {
    if (options.baseline.empty() ? arms[a].policy == sim::Policy::Os
                                 : arms[a].label == options.baseline) {
      base = a;
    }
  }
  if (base) {
    for (RunStats& s : stats) {
      s.diff_percent = diff_percent(stats[*base].mean_completion, s.mean_completion);
    }
  }
  return stats;
}

}  // namespace numapin::harness
