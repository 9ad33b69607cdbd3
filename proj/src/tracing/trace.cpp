#include "numapin/tracing/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace numapin::tracing {

using nlohmann::json;

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Node: return "node";
    case Level::Core: return "core";
    case Level::Memory: return "memory";
  }
  return "?";
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Measurement: return "measurement";
    case Kind::Estimate: return "estimate";
    case Kind::Benchmark: return "benchmark";
    case Kind::Action: return "action";
    case Kind::Bind: return "bind";
  }
  return "?";
}

std::optional<Level> parse_level(std::string_view s) {
  for (Level l : {Level::Node, Level::Core, Level::Memory}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (Kind k : {Kind::Measurement, Kind::Estimate, Kind::Benchmark, Kind::Action, Kind::Bind}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

const std::vector<std::string_view>& payload_keys() {
  static const std::vector<std::string_view> keys = {
      "v",      "v_bar",    "epsilon", "lambda",   "lower", "upper",       "regime",
      "reward", "previous", "action",  "switched", "node",  "memory_node", "occupancy"};
  return keys;
}

namespace {

std::string header_line() {
  json h = {{"schema", kTraceSchema}, {"version", kTraceVersion}};
  return h.dump();
}

}  // namespace

std::string to_line(const Event& event) {
  json j;
  j["step"] = event.step;
  j["thread"] = event.thread_id;
  j["level"] = to_string(event.level);
  j["kind"] = to_string(event.kind);
  j["payload"] = event.payload;
  return j.dump();
}

Event parse_line(std::string_view line) {
  const json j = json::parse(line.begin(), line.end());
  Event e;
  e.step = j.at("step").get<long>();
  e.thread_id = j.at("thread").get<ThreadId>();
  const auto level = parse_level(j.at("level").get<std::string>());
  const auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!level || !kind) {
    throw std::invalid_argument("trace: unknown level or kind in '" + std::string(line) + "'");
  }
  e.level = *level;
  e.kind = *kind;
  e.payload = j.at("payload").get<std::map<std::string, double>>();
  return e;
}

TraceSink::TraceSink(std::ostream& out) : out_(&out) { *out_ << header_line() << '\n'; }

TraceSink::TraceSink(const std::string& path)
    : owned_(std::make_unique<std::ofstream>(path, std::ios::trunc)), out_(owned_.get()) {
  if (!*out_) {
    throw std::runtime_error("trace: cannot open '" + path + "'");
  }
  *out_ << header_line() << '\n';
}

TraceSink::~TraceSink() {
  if (out_ != nullptr) {
    out_->flush();
  }
}

void TraceSink::record(const Event& event) {
  const auto& keys = payload_keys();
  for (const auto& entry : event.payload) {
    if (std::find(keys.begin(), keys.end(), entry.first) == keys.end()) {
      throw std::invalid_argument("trace: undocumented payload key '" + entry.first + "'");
    }
  }
  if (event.step < last_step_) {
    throw std::invalid_argument("trace: step " + std::to_string(event.step) +
                                " recorded after step " + std::to_string(last_step_));
  }
  last_step_ = event.step;
  *out_ << to_line(event) << '\n';
  if (!*out_) {
    throw std::runtime_error("trace: write failed");
  }
  ++count_;
}

void TraceSink::flush() {
  out_->flush();
  if (!*out_) {
    throw std::runtime_error("trace: flush failed");
  }
}

std::vector<Event> read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("trace: missing header");
  }
  const json header = json::parse(line);
  if (header.value("schema", "") != kTraceSchema || header.value("version", 0) != kTraceVersion) {
    throw std::invalid_argument("trace: unsupported header '" + line + "'");
  }
  std::vector<Event> events;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      events.push_back(parse_line(line));
    }
  }
  return events;
}

}  // namespace numapin::tracing
