#include "numapin/harness/report.hpp"

#include <fmt/format.h>

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace numapin::harness {

namespace {

// Shortest representation that round-trips, so files are byte-stable.
std::string num(double x) { return fmt::format("{}", x); }

template <typename T>
std::string opt(const std::optional<T>& x) {
  return x ? fmt::format("{}", *x) : std::string();
}

std::string regime_field(const std::optional<learning::Regime>& r) {
  return r ? std::string(learning::to_string(*r)) : std::string();
}

std::string file_token(std::string s) {
  for (char& c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '.' || c == '-';
    if (!keep) c = '_';
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("I/O error while writing " + path.string());
  }
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<sim::TraceRow>& rows) {
  out << kTraceCsvHeader << '\n';
  for (const sim::TraceRow& r : rows) {
    out << r.step << ',' << num(r.clock) << ',' << r.thread << ',' << r.node << ',' << r.core
        << ',' << opt(r.memory_node) << ',' << num(r.v_true) << ',' << num(r.v_measured) << ','
        << opt(r.v_bar) << ',' << opt(r.lower) << ',' << opt(r.upper) << ','
        << regime_field(r.regime) << ',' << (r.switched_node ? 1 : 0) << ','
        << (r.switched_core ? 1 : 0) << '\n';
  }
}

std::string format_summary(const std::vector<ScenarioStats>& stats) {
  std::string out = fmt::format("{:<10} {:<20} {:>10} {:>9} {:>10} {:>10}\n", "Scenario",
                                "Policy", "Mean (s)", "Dev (s)", "Avg. Spd.", "Diff. (%)");
  for (const ScenarioStats& s : stats) {
    for (const RunStats& r : s.arms) {
      const std::string diff = r.diff_percent ? fmt::format("{:+.2f}", *r.diff_percent) : "-";
      out += fmt::format("{:<10} {:<20} {:>10.2f} {:>9.2f} {:>10.2f} {:>10}\n", s.scenario,
                         r.label, r.mean_completion, r.deviation, r.avg_speed, diff);
    }
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<ScenarioStats>& stats) {
  out << "scenario,policy,mean_s,dev_s,avg_speed,diff_percent,n_seeds\n";
  for (const ScenarioStats& s : stats) {
    for (const RunStats& r : s.arms) {
      out << s.scenario << ',' << r.label << ',' << num(r.mean_completion) << ','
          << num(r.deviation) << ',' << num(r.avg_speed) << ',' << opt(r.diff_percent) << ','
          << r.completions.size() << '\n';
    }
  }
}

std::vector<std::filesystem::path> emit_report(const std::vector<ScenarioStats>& stats,
                                               const std::vector<NamedTrace>& traces,
                                               const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  }
  std::vector<std::filesystem::path> written;

  const auto txt = out_dir / "summary.txt";
  {
    auto out = open_out(txt);
    out << format_summary(stats);
    check_written(out, txt);
  }
  written.push_back(txt);

  const auto csv = out_dir / "summary.csv";
  {
    auto out = open_out(csv);
    write_summary_csv(out, stats);
    check_written(out, csv);
  }
  written.push_back(csv);

  for (const NamedTrace& t : traces) {
    const auto path = out_dir / fmt::format("trace_{}_{}_{}.csv", file_token(t.scenario),
                                            file_token(t.label), t.seed);
    auto out = open_out(path);
    write_trace_csv(out, t.rows);
    check_written(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace numapin::harness
