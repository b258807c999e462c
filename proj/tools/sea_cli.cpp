#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sea/lti_analysis.hpp"
#include "sea/metrics.hpp"
#include "sea/nominal_model.hpp"
#include "sea/scenario.hpp"
#include "sea/suite.hpp"
#include "sea/trace_io.hpp"

namespace {

using namespace sea;

struct Overrides {
  std::optional<double> T_s, T, K_a;
  std::optional<int> decimation;

  void apply(ScenarioConfig& cfg) const {
    if (T_s) cfg.l1.T_s = *T_s;
    if (T) cfg.l1.T = *T;
    if (K_a) cfg.l1.K_a = *K_a;
    if (decimation) cfg.decimation = *decimation;
    cfg.validate();
  }
};

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kConfig: return 2;
    case ErrorCategory::kIo: return 3;
    case ErrorCategory::kNumeric: return 4;
    case ErrorCategory::kAnalysis: return 5;
  }
  return 1;
}

std::string opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", *v);
  return buf;
}

void print_metrics(const std::string& name, const MetricsReport& m) {
  std::printf("%s: static_error=%.6g rad overshoot=%.4g%% settling=%s s peak_current=%.6g permille rise_delay=%s s",
              name.c_str(), m.static_error, m.overshoot, opt(m.settling_time).c_str(), m.peak_current,
              opt(m.rise_delay).c_str());
  if (m.contact_time) {
    std::printf(" contact=%.6g s peak_current_after=%.6g peak_speed_after=%.6g", *m.contact_time,
                m.peak_current_after_contact, m.peak_speed_after_contact);
  }
  std::printf("\n");
}

// Warn, never refuse: the condition is sufficient, not necessary.
void warn_stability(const ScenarioConfig& cfg) {
  if (cfg.controller == ControllerKind::kRrc) return;
  const NominalModel model = build_nominal_model(cfg.plant, build_rrc_gains(cfg.plant));
  const double speed = 4.0 * std::abs(cfg.step_amplitude) * std::sqrt(cfg.plant.K_f / cfg.plant.J_a);
  const StabilityBudget budget =
      envelope_budget(cfg.plant, {cfg.plant.m}, cfg.environment.K_e, cfg.environment.q_0, speed);
  const StabilityVerdict v = check_stability_condition(model, cfg.l1, budget, cfg.step_amplitude);
  if (!v.satisfied) {
    std::fprintf(stderr, "warning: sufficient stability condition not met for '%s' (lhs=%.4g, margin=%.4g)\n",
                 cfg.name.c_str(), v.lhs, v.margin);
  }
}

int cmd_run(const std::string& file, const std::string& out_dir, const Overrides& ov) {
  ScenarioConfig cfg = load_scenario(file);
  ov.apply(cfg);
  warn_stability(cfg);
  const std::filesystem::path out(out_dir);
  const std::string csv = cfg.name + ".csv";
  try {
    const RunTrace trace = run_scenario(cfg);
    export_trace(trace, (out / csv).string());
    export_plotscript({csv}, (out / (cfg.name + "_plot.py")).string());
    print_metrics(cfg.name, compute_metrics(trace, MetricsOptions::from_scenario(cfg)));
  } catch (const SimulationError& e) {
    export_trace(e.partial(), (out / (cfg.name + ".partial.csv")).string());
    throw;
  }
  std::printf("wrote %s\n", (out / csv).string().c_str());
  return 0;
}

int cmd_suite(const std::string& file, const std::string& out_dir, std::optional<int> jobs, const Overrides& ov) {
  SuiteManifest manifest = load_manifest(file);
  for (SuiteEntry& e : manifest.entries) ov.apply(e.config);
  SuiteOptions options;
  options.out_dir = out_dir;
  options.jobs = jobs.value_or(manifest.jobs);
  const SuiteResult result = run_suite(manifest.entries, options);
  for (const SummaryRow& r : result.summary) {
    if (r.ok) print_metrics(r.name, r.metrics);
    else std::printf("%s: FAILED %s\n", r.name.c_str(), r.error.c_str());
  }
  std::printf("suite '%s': %zu run(s), %zu failed; summary in %s\n", manifest.name.c_str(), result.summary.size(),
              result.failures(), (std::filesystem::path(out_dir) / "summary.csv").string().c_str());
  return result.failures() == 0 ? 0 : 1;
}

struct AnalyzeArgs {
  double lambda_max = 1e4;
  int points = 201;
  std::vector<double> masses = {0.75, 1.5, 2.25};
  std::optional<double> contact_stiffness;
  double max_motor_speed = 20.0;
  std::vector<double> filter_constants;
};

int cmd_analyze(const std::string& what, const std::string& file, const std::string& out_dir, const Overrides& ov,
                const AnalyzeArgs& a) {
  ScenarioConfig cfg = load_scenario(file);
  ov.apply(cfg);
  const std::filesystem::path out(out_dir);
  if (what == "rootlocus") {
    if (a.points < 2 || !(a.lambda_max > 0.0)) {
      throw Error(ErrorCategory::kConfig, "rootlocus: need --points >= 2 and --lambda-max > 0");
    }
    std::vector<double> grid(static_cast<std::size_t>(a.points));
    for (int i = 0; i < a.points; ++i) grid[i] = a.lambda_max * i / (a.points - 1);
    const RootLocusResult locus = root_locus(std::sqrt(cfg.plant.K_f / cfg.plant.J_a), grid);
    const std::string path = (out / "rootlocus.csv").string();
    write_text_file(path, format_root_locus_csv(locus));
    std::size_t unstable = 0;
    for (const auto& roots : locus.roots) {
      for (const auto& r : roots) unstable += r.real() >= 0.0;
    }
    std::printf("root locus: %d points, %zu unstable root(s); wrote %s\n", a.points, unstable, path.c_str());
    return 0;
  }
  // condition
  const NominalModel model = build_nominal_model(cfg.plant, build_rrc_gains(cfg.plant));
  const StabilityBudget budget =
      envelope_budget(cfg.plant, a.masses, a.contact_stiffness.value_or(cfg.environment.K_e), cfg.environment.q_0,
                      a.max_motor_speed);
  std::vector<double> Ts = a.filter_constants.empty() ? std::vector<double>{cfg.l1.T} : a.filter_constants;
  std::vector<ConditionRow> rows;
  bool all = true;
  for (double T : Ts) {
    L1Config l1 = cfg.l1;
    l1.T = T;
    ConditionRow row{T, l1.K_a, check_stability_condition(model, l1, budget, cfg.step_amplitude)};
    std::printf("T=%g K_a=%g: lhs=%.6g margin=%.6g best_rho=%.6g %s\n", T, l1.K_a, row.verdict.lhs,
                row.verdict.margin, row.verdict.best_rho, row.verdict.satisfied ? "satisfied" : "violated");
    all = all && row.verdict.satisfied;
    rows.push_back(row);
  }
  const std::string path = (out / "condition.csv").string();
  write_text_file(path, format_condition_csv(rows));
  std::printf("wrote %s\n", path.c_str());
  return all ? 0 : 1;
}

int cmd_metrics(const std::string& trace_file, const std::optional<std::string>& config) {
  ScenarioConfig cfg;
  if (config) cfg = load_scenario(*config);
  const RunTrace trace = import_trace(trace_file);
  print_metrics(std::filesystem::path(trace_file).stem().string(),
                compute_metrics(trace, MetricsOptions::from_scenario(cfg)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Series elastic actuator simulation and analysis"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  Overrides ov;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--decimation", ov.decimation, "keep every n-th control sample");
  app.add_option("--ts", ov.T_s, "adaptation period T_s [s]");
  app.add_option("--T", ov.T, "filter time constant T [s]");
  app.add_option("--ka", ov.K_a, "adaptive gain K_a");

  std::string file;
  auto* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("scenario", file, "scenario INI file")->required();

  std::optional<int> jobs;
  auto* suite = app.add_subcommand("suite", "run a suite manifest");
  suite->add_option("manifest", file, "suite manifest INI file")->required();
  suite->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  std::string what;
  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "root locus or stability condition");
  analyze->add_option("what", what, "rootlocus|condition")->required()->check(CLI::IsMember({"rootlocus", "condition"}));
  analyze->add_option("config", file, "scenario INI file")->required();
  analyze->add_option("--lambda-max", aa.lambda_max, "largest K_e/J_a on the root-locus grid");
  analyze->add_option("--points", aa.points, "root-locus grid size");
  analyze->add_option("--masses", aa.masses, "load masses of the envelope [kg]")->delimiter(',');
  analyze->add_option("--ke-max", aa.contact_stiffness, "largest contact stiffness of the envelope");
  analyze->add_option("--max-motor-speed", aa.max_motor_speed, "motor speed bound for B_1 [rad/s]");
  analyze->add_option("--filter-constants", aa.filter_constants, "filter constants T to check")->delimiter(',');

  std::optional<std::string> metrics_config;
  auto* metrics = app.add_subcommand("metrics", "metrics of an exported trace");
  metrics->add_option("trace", file, "trace CSV file")->required();
  metrics->add_option("--config", metrics_config, "scenario that produced the trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: category=usage message=%s\n", e.what());
    return 64;
  }

  try {
    if (*run) return cmd_run(file, out_dir, ov);
    if (*suite) return cmd_suite(file, out_dir, jobs, ov);
    if (*analyze) return cmd_analyze(what, file, out_dir, ov, aa);
    if (*metrics) return cmd_metrics(file, metrics_config);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: category=%s message=%s\n", std::string(to_string(e.category())).c_str(), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: category=internal message=%s\n", e.what());
    return 70;
  }
  return 0;
}
