#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "numapin/harness/experiment.hpp"
#include "numapin/simulator/simulator.hpp"

namespace numapin::harness {

/// Header of the per-interval trace CSV.
inline constexpr const char* kTraceCsvHeader =
    "step,clock_s,thread_id,node,core,memory_node,v_true,v_measured,v_bar,lower,upper,regime,"
    "switched_node,switched_core";

/// Writes the header and one line per row. Unset optional fields are empty.
void write_trace_csv(std::ostream& out, const std::vector<sim::TraceRow>& rows);

/// Results of one scenario.
struct ScenarioStats {
  std::string scenario;
  std::vector<RunStats> arms;
};

/// Per-interval rows of one run, named for its output file.
struct NamedTrace {
  std::string scenario;
  std::string label;
  std::uint64_t seed = 0;
  std::vector<sim::TraceRow> rows;
};

/// Fixed-width table: Scenario | Policy | Mean (s) | Dev (s) | Avg. Spd. | Diff. (%).
std::string format_summary(const std::vector<ScenarioStats>& stats);

/// Same content as comma-separated values.
void write_summary_csv(std::ostream& out, const std::vector<ScenarioStats>& stats);

/// Writes summary.txt, summary.csv and one trace_<scenario>_<label>_<seed>.csv
/// per trace into `out_dir` (created if missing). Returns the written paths.
/// Throws std::runtime_error on I/O failure.
std::vector<std::filesystem::path> emit_report(const std::vector<ScenarioStats>& stats,
                                               const std::vector<NamedTrace>& traces,
                                               const std::filesystem::path& out_dir);

}  // namespace numapin::harness
