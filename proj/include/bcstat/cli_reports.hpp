#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcstat/char_poly.hpp"

namespace bcstat {

// Inclusive integer range, written "3" or "1..8" on the command line.
struct IntRange {
  long lo = 0;
  long hi = 0;
};
IntRange parse_range(const std::string& text, const std::string& what);

enum class OutputFormat { Text, Json, Csv };
OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

struct RunConfig {
  std::string subcommand;
  IntRange n{1, 1};
  IntRange q{3, 3};
  IntRange d{0, -1};  // empty range: use the subcommand default
  std::string statistic = "1";
  std::string source = "both";  // os | douglass | both
  OutputFormat format = OutputFormat::Text;
  std::string output_path;  // empty: stdout
  int workers = 1;
  bool force = false;   // lifts the enumeration-size guard, echoed in reports
  bool timing = false;  // report wall time; off by default so reruns are byte-stable
  int d_max = 40;       // series truncation for the limit subcommand
};

// One result with its provenance; keys serialize in sorted order.
using ReportRow = std::map<std::string, std::string>;

struct Report {
  RunConfig config;
  ReportRow fixtures;  // embedded reference tables the run consulted
  std::vector<ReportRow> results;
  bool pass = false;
  long timing_ms = 0;
};

// Dispatches the configured subcommand; throws std::invalid_argument for
// guard violations (with the estimated cost when the guard is size-based).
Report run_report(const RunConfig& config);

// Deterministic serialization: identical report -> identical bytes. JSON is
// {"config": {...}, "results": [...], "pass": bool, "timing_ms": int} with
// sorted keys; CSV uses a fixed header per subcommand; text is one sorted
// key=value line per result.
std::string render(const Report& report, OutputFormat format);

// Writes render() output to the path, or stdout when the path is empty.
void emit(const Report& report, OutputFormat format, const std::string& path);

// Full command-line entry; args excludes argv[0]. Exit code 0 iff every
// embedded check passed, 1 on a failed check, 2 on usage or guard errors.
int run(const std::vector<std::string>& args);

}  // namespace bcstat
