#pragma once

#include <string>
#include <vector>

#include "sea/lti_analysis.hpp"
#include "sea/metrics.hpp"
#include "sea/scenario.hpp"

namespace sea {

/// Header row from trace_column_names(), then one row per sample with the
/// shortest round-trip decimal form of each value.
std::string format_trace_csv(const RunTrace& trace);
RunTrace parse_trace_csv(const std::string& text);

/// File variants; failures raise sea::Error (kIo) naming the path.
void export_trace(const RunTrace& trace, const std::string& path);
RunTrace import_trace(const std::string& path);

/// Python/matplotlib script that plots q, current and sigma22_hat against t
/// from the CSV files given (paths relative to the script's directory).
void export_plotscript(const std::vector<std::string>& csv_files, const std::string& path);

struct SummaryRow {
  std::string name;
  std::string controller;
  double load_mass = 0.0;
  double contact_stiffness = 0.0;
  bool ok = false;
  std::string error;  // "category: message" when !ok
  MetricsReport metrics;
};

std::string format_summary_csv(const std::vector<SummaryRow>& rows);
void write_text_file(const std::string& path, const std::string& text);

/// lambda, root index, real part, imaginary part.
std::string format_root_locus_csv(const RootLocusResult& locus);

struct ConditionRow {
  double T = 0.0;
  double K_a = 0.0;
  StabilityVerdict verdict;
};
std::string format_condition_csv(const std::vector<ConditionRow>& rows);

}  // namespace sea
