#include <gtest/gtest.h>

#include <string>

#include "numapin/core/config.hpp"
#include "numapin/core/errors.hpp"
#include "numapin/harness/scenarios.hpp"

namespace numapin {
namespace {

constexpr const char* kMinimal = R"({
  "schema_version": 1,
  "name": "toy",
  "topology": {"nodes": 2, "cores_per_node": 2},
  "n_threads": 3,
  "work": 46
})";

TEST(Config, MinimalDocumentUsesDefaults) {
  const Scenario s = parse_config(kMinimal);
  EXPECT_EQ(s.name, "toy");
  EXPECT_EQ(s.topology, Topology::uniform(2, 2));
  EXPECT_EQ(s.available, CoreAvailability::all(s.topology));
  EXPECT_EQ(s.workload.n_threads, 3);
  EXPECT_DOUBLE_EQ(s.workload.work_per_thread, 46.0);
  EXPECT_EQ(s.resources, default_resources());
  EXPECT_EQ(s.params, SchedulerParams{});
  EXPECT_EQ(s.machine, MachineModel{});
}

TEST(Config, ListingFormMirrorsInitialisationBlock) {
  const Scenario s = parse_config(R"({
    "schema_version": 1,
    "topology": {"nodes": 2, "cores_per_node": 14},
    "available_cores": {"first": [8, 2]},
    "n_threads": 40,
    "work": 100,
    "interference": [{"start": 60, "cores": [0, 1, 14], "load": 2}],
    "resources": {
      "RESOURCES": ["NUMA_BANDWIDTH", "NUMA_MEMORY"],
      "OPT_CRITERIA": ["PROCESSING_SPEED", "PROCESSING_SPEED"],
      "RESOURCES_EST_METHODS": ["RL", "RL"],
      "RESOURCES_OPT_METHODS": ["RL", "AL"],
      "CHILD_RESOURCES": ["CPU_BANDWIDTH", "NULL"],
      "CHILD_RESOURCES_OPT_METHODS": ["AL", "AL"]
    },
    "params": {"eta": 2.0, "zeta": 0.5}
  })");
  EXPECT_EQ(s.resources, default_resources());
  EXPECT_EQ(s.available.size(), 10u);
  ASSERT_EQ(s.interference.phases.size(), 1u);
  EXPECT_EQ(s.interference.phases[0].loads, (std::map<CoreId, double>{{0, 2}, {1, 2}, {14, 2}}));
  EXPECT_FALSE(s.interference.phases[0].end.has_value());
  EXPECT_DOUBLE_EQ(s.params.eta, 2.0);
  EXPECT_EQ(s.params.zeta, 0.5);
}

TEST(Config, CanonicalTextRoundTrips) {
  for (const std::string& name : harness::scenario_names()) {
    const Scenario s = harness::build_scenario(name);
    EXPECT_EQ(parse_config(to_config_text(s)), s) << name;
  }
}

TEST(Config, ScenarioFilesMatchCatalogue) {
  for (const std::string& name : harness::scenario_names()) {
    const Scenario s = load_config(std::string(NUMAPIN_SCENARIO_DIR) + "/" + name + ".json");
    EXPECT_EQ(s, harness::build_scenario(name)) << name;
  }
}

TEST(Config, SyntaxErrorsCarryPosition) {
  try {
    parse_config("{\n  \"schema_version\": 1,\n  \"name\": ]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
  EXPECT_THROW(parse_config("[1, 2]"), ParseError);
}

TEST(Config, SemanticErrorsNameTheKey) {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"schema_version": 2, "topology": {"nodes": 1, "cores_per_node": 1},
                         "n_threads": 1, "work": 1})")
                .find("schema_version"),
            std::string::npos);
  EXPECT_NE(message(R"({"schema_version": 1, "topology": {"nodes": 1, "cores_per_node": 1},
                         "n_threads": 1, "work": 1, "colour": 3})")
                .find("colour"),
            std::string::npos);
  EXPECT_NE(message(R"({"schema_version": 1, "topology": {"nodes": 1, "cores_per_node": 1},
                         "work": 1})")
                .find("n_threads"),
            std::string::npos);
  EXPECT_NE(message(R"({"schema_version": 1, "topology": {"nodes": 1, "cores_per_node": 1},
                         "n_threads": 1, "work": 1, "params": {"eta": 0.9}})")
                .find("eta"),
            std::string::npos);
  EXPECT_NE(message(R"({"schema_version": 1, "topology": {"nodes": 1, "cores_per_node": 1},
                         "n_threads": 1, "work": 1,
                         "resources": {"RESOURCES": ["NUMA_BANDWIDTH"],
                                       "RESOURCES_OPT_METHODS": ["RL", "AL"]}})")
                .find("RESOURCES_OPT_METHODS"),
            std::string::npos);
  EXPECT_NE(message(R"({"schema_version": 1, "topology": {"nodes": 1, "cores_per_node": 1},
                         "n_threads": 1, "work": 1,
                         "resources": [{"name": "NUMA_BANDWIDTH", "opt_method": "SGD"}]})")
                .find("SGD"),
            std::string::npos);
}

TEST(Config, MissingFileIsReported) {
  EXPECT_THROW(load_config("/nonexistent/scenario.json"), std::runtime_error);
}

}  // namespace
}  // namespace numapin
