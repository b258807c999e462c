#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sea/scenario.hpp"
#include "sea/trace_io.hpp"

namespace sea {

struct SuiteEntry {
  std::string name;
  ScenarioConfig config;
};

struct SuiteManifest {
  std::string name = "suite";
  int jobs = 1;
  std::vector<SuiteEntry> entries;
};

/// INI manifest:
///   [suite]      name, jobs, builtin = fig4|collision (optional)
///   [scenarios]  <entry name> = <scenario file relative to the manifest>
/// Built-in entries come first, then the listed files in order.
SuiteManifest load_manifest(const std::string& path);

/// {rrc, l1ac} x load masses, nominal step, no contact.
std::vector<SuiteEntry> fig4_suite(const ScenarioConfig& base = {},
                                   const std::vector<double>& masses = {0.75, 1.5, 2.25});
/// {rrc, l1ac} x contact stiffness, wall at 0.7 q_d, nominal load.
std::vector<SuiteEntry> collision_suite(const ScenarioConfig& base = {},
                                        const std::vector<double>& stiffness = {100.0, 500.0, 1000.0});

struct SuiteOptions {
  std::string out_dir;  // empty: nothing is written
  int jobs = 1;
  bool keep_traces = false;
};

struct SuiteResult {
  std::vector<SummaryRow> summary;            // manifest order
  std::vector<std::optional<RunTrace>> traces;  // filled when keep_traces
  std::size_t failures() const;
};

/// Runs every entry; an entry that throws is reported in its summary row and
/// does not stop the others. Writes <out>/<name>.csv per successful run,
/// <out>/<name>.partial.csv for numeric failures, <out>/summary.csv and
/// <out>/plot_traces.py.
SuiteResult run_suite(const std::vector<SuiteEntry>& entries, const SuiteOptions& options);

}  // namespace sea
