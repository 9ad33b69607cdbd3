#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numapin/core/topology.hpp"

namespace numapin::tracing {

inline constexpr std::string_view kTraceSchema = "numapin.trace";
inline constexpr int kTraceVersion = 1;

enum class Level { Node, Core, Memory };
enum class Kind { Measurement, Estimate, Benchmark, Action, Bind };

std::string_view to_string(Level level);
std::string_view to_string(Kind kind);
std::optional<Level> parse_level(std::string_view s);
std::optional<Kind> parse_kind(std::string_view s);

/// Payload keys accepted by record(). Meaning:
///   v            measured speed consumed this round
///   v_bar        running average after the estimator step
///   epsilon      estimator step size used
///   lambda       experimentation probability used
///   lower/upper  benchmarks after the update
///   regime       0 below, 1 satisfied, 2 above (bracket carried into the round)
///   reward       normalised reward of an RL update
///   previous     action id (node or core) before the round
///   action       action id chosen for the next interval
///   switched     1 if action != previous
///   node         node of the chosen core (core-level action)
///   memory_node  node the memory is bound to (bind)
///   occupancy    fraction of live threads on that node (bind)
const std::vector<std::string_view>& payload_keys();

/// One scheduler decision record. `step` is the scheduling round: round 0
/// is the initial placement, round k >= 1 consumes the measurements of
/// interval k-1 and places threads for interval k.
struct Event {
  long step = 0;
  ThreadId thread_id = 0;
  Level level = Level::Node;
  Kind kind = Kind::Measurement;
  std::map<std::string, double> payload;

  bool operator==(const Event&) const = default;
};

/// Append-only line-delimited JSON sink. The first line is a schema header
/// {"schema":"numapin.trace","version":1}; each further line is one Event.
class TraceSink {
 public:
  /// Writes to `out`, which must outlive the sink.
  explicit TraceSink(std::ostream& out);
  /// Opens (truncates) `path`; throws std::runtime_error when it cannot.
  explicit TraceSink(const std::string& path);
  ~TraceSink();

  TraceSink(const TraceSink&) = delete;
  TraceSink& operator=(const TraceSink&) = delete;

  /// Throws std::invalid_argument for an unknown payload key or a step
  /// smaller than the previous one; std::runtime_error on I/O failure.
  void record(const Event& event);
  void flush();
  std::size_t count() const { return count_; }

 private:
  std::unique_ptr<std::ostream> owned_;
  std::ostream* out_;
  long last_step_ = 0;
  std::size_t count_ = 0;
};

std::string to_line(const Event& event);
Event parse_line(std::string_view line);

/// Reads a whole trace, checking the schema header.
std::vector<Event> read_trace(std::istream& in);

}  // namespace numapin::tracing
