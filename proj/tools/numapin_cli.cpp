// Command-line front end: run catalogued or file-defined scenarios, the full
// suite, and the exhaustive oracle on toy machines.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "numapin/core/config.hpp"
#include "numapin/core/errors.hpp"
#include "numapin/harness/experiment.hpp"
#include "numapin/harness/oracle.hpp"
#include "numapin/harness/report.hpp"
#include "numapin/harness/scenarios.hpp"
#include "numapin/tracing/trace.hpp"

using namespace numapin;

namespace {

struct Overrides {
  std::optional<double> time_scale;
  std::optional<double> eta;
  std::optional<std::string> zeta;
  std::optional<double> noise;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  int seeds = 20;
};

std::optional<double> parse_zeta(const std::string& text) {
  if (text == "unbound" || text == "none") {
    return std::nullopt;
  }
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  }
  return std::stod(text);
}

Scenario apply(Scenario s, const Overrides& o) {
  if (o.time_scale) {
    // Phase times are scripted unscaled, so only the reading rate changes.
    s.time_scale = *o.time_scale;
  }
  if (o.eta) s.params.eta = *o.eta;
  if (o.zeta) s.params.zeta = parse_zeta(*o.zeta);
  if (o.noise) s.machine.noise_sigma = *o.noise;
  s.validate();
  return s;
}

Scenario load(const std::string& name, const std::string& config, const Overrides& o) {
  if (!config.empty()) {
    return apply(load_config(config), o);
  }
  harness::DeskScale scale;
  if (o.time_scale) scale.time_scale = *o.time_scale;
  return apply(harness::build_scenario(name, scale), o);
}

harness::ExperimentOptions experiment_options(const Overrides& o) {
  harness::ExperimentOptions opts;
  opts.n_seeds = o.seeds;
  opts.base_seed = o.seed;
  opts.workers = o.workers;
  return opts;
}

std::vector<harness::Arm> default_arms(const Scenario& s) {
  if (s.name == "D") {
    return {harness::os_arm(), harness::learned_arm(std::nullopt), harness::learned_arm(0.5),
            harness::learned_arm(0.0)};
  }
  return {harness::os_arm(), harness::learned_arm()};
}

int cmd_run(const std::string& name, const std::string& config, const std::string& policy_name,
            const std::string& out_dir, const Overrides& o) {
  const Scenario scenario = load(name, config, o);
  const auto policy = sim::parse_policy(policy_name);
  if (!policy) {
    throw std::invalid_argument("unknown policy '" + policy_name + "'");
  }
  std::vector<harness::Arm> arms{harness::os_arm()};
  if (*policy != sim::Policy::Os) {
    arms.push_back({std::string(sim::to_string(*policy)), *policy, false, std::nullopt});
  }
  const auto stats = harness::run_experiment(scenario, arms, experiment_options(o));
  const std::vector<harness::ScenarioStats> table{{scenario.name, stats}};
  std::cout << harness::format_summary(table);

  if (!out_dir.empty()) {
    std::vector<harness::NamedTrace> traces;
    for (const harness::Arm& arm : arms) {
      sim::RunOptions ro;
      ro.record_rows = true;
      std::unique_ptr<tracing::TraceSink> sink;
      if (arm.policy == sim::Policy::Learned) {
        std::filesystem::create_directories(out_dir);
        sink = std::make_unique<tracing::TraceSink>(
            (std::filesystem::path(out_dir) / ("decisions_" + std::to_string(o.seed) + ".jsonl"))
                .string());
        ro.sink = sink.get();
      }
      auto r = sim::run_to_completion(harness::apply_arm(scenario, arm), arm.policy, o.seed, ro);
      traces.push_back({scenario.name, arm.label, o.seed, std::move(r.rows)});
    }
    for (const auto& path : harness::emit_report(table, traces, out_dir)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

int cmd_suite(const std::vector<std::string>& names, const std::string& out_dir,
              const Overrides& o) {
  std::vector<harness::ScenarioStats> table;
  for (const std::string& name : names) {
    const Scenario scenario = load(name, "", o);
    table.push_back({name, harness::run_experiment(scenario, default_arms(scenario),
                                                   experiment_options(o))});
    std::cerr << "done " << name << '\n';
  }
  std::cout << harness::format_summary(table);
  if (!out_dir.empty()) {
    for (const auto& path : harness::emit_report(table, {}, out_dir)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

// "--interference 0=3,2=1" puts load 3 on core 0 and load 1 on core 2.
std::map<CoreId, double> parse_loads(const std::string& text) {
  std::map<CoreId, double> loads;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("expected core=load, got '" + item + "'");
    }
    loads[std::stoi(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
  }
  return loads;
}

int cmd_oracle(int threads, const std::string& cores, const std::string& interference,
               const Overrides& o) {
  const auto x = cores.find('x');
  if (x == std::string::npos) {
    throw std::invalid_argument("--cores expects NODESxCORES, e.g. 2x2");
  }
  Scenario s;
  s.name = "oracle";
  s.topology = Topology::uniform(std::stoi(cores.substr(0, x)), std::stoi(cores.substr(x + 1)));
  s.available = CoreAvailability::all(s.topology);
  s.workload.n_threads = threads;
  s.resources = default_resources();
  if (!interference.empty()) {
    s.interference.phases.push_back({0.0, std::nullopt, parse_loads(interference)});
  }
  s = apply(s, o);
  const harness::OracleResult best = harness::brute_force_optimum(s);
  std::printf("evaluated %zu assignments\nbest f = %.6g\n", best.evaluated, best.f);
  for (std::size_t t = 0; t < best.assignment.size(); ++t) {
    const Placement& p = best.assignment[t];
    std::printf("thread %zu: node %d core %d memory %d\n", t, p.node, p.core,
                p.memory_node.value_or(p.node));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NUMA thread-pinning scheduler simulator"};
  app.require_subcommand(1);

  Overrides o;
  double time_scale = 0.0;
  double eta = 0.0;
  double noise = -1.0;
  std::string zeta;
  app.add_option("--time-scale", time_scale, "Compression of scripted interference times")
      ->check(CLI::PositiveNumber);
  app.add_option("--eta", eta, "Benchmark bracket ratio (> 1)");
  app.add_option("--zeta", zeta, "Memory-binding occupancy threshold: number, a/b, or unbound");
  app.add_option("--noise", noise, "Relative measurement noise")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--workers", o.workers, "Worker threads (0: all cores)");

  std::string scenario = "A.2";
  std::string config;
  std::string policy = "learned";
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one scenario under a policy and the OS baseline");
  run->add_option("--scenario", scenario, "Catalogued scenario name (A.1 .. C.3, D)");
  run->add_option("--config", config, "Scenario file; overrides --scenario")
      ->check(CLI::ExistingFile);
  run->add_option("--policy", policy, "learned | os | static");
  run->add_option("--seeds", o.seeds, "Seeds per policy")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Directory for summary and trace files");

  bool all = false;
  std::vector<std::string> names;
  std::string suite_out;
  auto* suite = app.add_subcommand("suite", "Run catalogued scenarios against the OS baseline");
  suite->add_flag("--all", all, "Every catalogued scenario");
  suite->add_option("--scenario", names, "Scenario names");
  suite->add_option("--seeds", o.seeds, "Seeds per policy")->check(CLI::PositiveNumber);
  suite->add_option("--out", suite_out, "Directory for summary files");

  int threads = 3;
  std::string cores = "2x2";
  std::string loads;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive best static assignment on a toy machine");
  oracle->add_option("--threads", threads, "Number of threads")->check(CLI::PositiveNumber);
  oracle->add_option("--cores", cores, "NODESxCORES_PER_NODE");
  oracle->add_option("--interference", loads, "Exogenous loads, e.g. 0=3,2=1");

  std::string export_name = "A.1";
  auto* exporter = app.add_subcommand("export", "Print the scenario file of a catalogued scenario");
  exporter->add_option("--scenario", export_name, "Catalogued scenario name");

  CLI11_PARSE(app, argc, argv);
  if (time_scale > 0.0) o.time_scale = time_scale;
  if (eta > 0.0) o.eta = eta;
  if (noise >= 0.0) o.noise = noise;
  if (!zeta.empty()) o.zeta = zeta;

  try {
    if (*run) {
      return cmd_run(scenario, config, policy, out_dir, o);
    }
    if (*suite) {
      if (all || names.empty()) names = harness::scenario_names();
      return cmd_suite(names, suite_out, o);
    }
    if (*exporter) {
      std::cout << to_config_text(load(export_name, "", o));
      return 0;
    }
    return cmd_oracle(threads, cores, loads, o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
