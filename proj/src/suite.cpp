#include "sea/suite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sea/metrics.hpp"

namespace sea {

namespace {

std::string label(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<SuiteEntry> fig4_suite(const ScenarioConfig& base, const std::vector<double>& masses) {
  std::vector<SuiteEntry> out;
  for (ControllerKind kind : {ControllerKind::kRrc, ControllerKind::kL1ac}) {
    for (double m : masses) {
      SuiteEntry e{std::string(to_string(kind)) + "_m" + label(m), base};
      e.config.name = e.name;
      e.config.controller = kind;
      e.config.plant.m = m;
      e.config.environment = EnvironmentModel{};
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<SuiteEntry> collision_suite(const ScenarioConfig& base, const std::vector<double>& stiffness) {
  std::vector<SuiteEntry> out;
  for (ControllerKind kind : {ControllerKind::kRrc, ControllerKind::kL1ac}) {
    for (double k : stiffness) {
      SuiteEntry e{std::string(to_string(kind)) + "_ke" + label(k), base};
      e.config.name = e.name;
      e.config.controller = kind;
      e.config.plant.m = e.config.plant.m_0;
      e.config.environment = EnvironmentModel{k, 0.7 * base.step_amplitude, false};
      out.push_back(std::move(e));
    }
  }
  return out;
}

SuiteManifest load_manifest(const std::string& path) {
  using boost::property_tree::ptree;
  ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    const bool missing = !std::filesystem::exists(path);
    throw Error(missing ? ErrorCategory::kIo : ErrorCategory::kConfig,
                path + ": " + e.message() + (missing ? "" : " at line " + std::to_string(e.line())));
  }
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();

  SuiteManifest m;
  std::set<std::string> names;
  auto add = [&](SuiteEntry e) {
    if (!names.insert(e.name).second) {
      throw Error(ErrorCategory::kConfig, path + ": duplicate scenario name '" + e.name + "'");
    }
    m.entries.push_back(std::move(e));
  };
  for (const auto& [section, body] : tree) {
    if (section != "suite" && section != "scenarios") {
      throw Error(ErrorCategory::kConfig, path + ": unexpected section '" + section + "'");
    }
  }
  if (auto suite = tree.get_child_optional("suite")) {
    for (const auto& [key, node] : *suite) {
      const std::string v = node.data();
      if (key == "name") {
        m.name = v;
      } else if (key == "jobs") {
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), m.jobs);
        if (ec != std::errc() || ptr != v.data() + v.size() || m.jobs < 1) {
          throw Error(ErrorCategory::kConfig, path + ": jobs must be a positive integer");
        }
      } else if (key == "builtin") {
        std::vector<SuiteEntry> builtin;
        if (v == "fig4") builtin = fig4_suite();
        else if (v == "collision") builtin = collision_suite();
        else throw Error(ErrorCategory::kConfig, path + ": unknown builtin suite '" + v + "' (fig4|collision)");
        for (auto& e : builtin) add(std::move(e));
      } else {
        throw Error(ErrorCategory::kConfig, path + ": unknown key '" + key + "' in [suite]");
      }
    }
  }
  if (auto scenarios = tree.get_child_optional("scenarios")) {
    for (const auto& [key, node] : *scenarios) {
      SuiteEntry e{key, load_scenario((dir / node.data()).string())};
      e.config.name = key;
      add(std::move(e));
    }
  }
  return m;
}

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(std::count_if(summary.begin(), summary.end(), [](const SummaryRow& r) { return !r.ok; }));
}

SuiteResult run_suite(const std::vector<SuiteEntry>& entries, const SuiteOptions& options) {
  SuiteResult result;
  result.summary.resize(entries.size());
  result.traces.resize(entries.size());
  const std::filesystem::path out_dir(options.out_dir);
  const bool write = !options.out_dir.empty();

  auto run_one = [&](std::size_t i) {
    const SuiteEntry& e = entries[i];
    SummaryRow& row = result.summary[i];
    row.name = e.name;
    row.controller = std::string(to_string(e.config.controller));
    row.load_mass = e.config.plant.m;
    row.contact_stiffness = e.config.environment.K_e;
    try {
      RunTrace trace = run_scenario(e.config);
      row.metrics = compute_metrics(trace, MetricsOptions::from_scenario(e.config));
      if (write) export_trace(trace, (out_dir / (e.name + ".csv")).string());
      if (options.keep_traces) result.traces[i] = std::move(trace);
      row.ok = true;
    } catch (const SimulationError& err) {
      row.error = std::string(to_string(err.category())) + ": " + err.what();
      if (write) {
        try {
          export_trace(err.partial(), (out_dir / (e.name + ".partial.csv")).string());
        } catch (const Error&) {
        }
      }
    } catch (const Error& err) {
      row.error = std::string(to_string(err.category())) + ": " + err.what();
    } catch (const std::exception& err) {
      row.error = std::string("internal: ") + err.what();
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1, options.jobs), entries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (write) {
    write_text_file((out_dir / "summary.csv").string(), format_summary_csv(result.summary));
    std::vector<std::string> files;
    for (const SummaryRow& r : result.summary) {
      if (r.ok) files.push_back(r.name + ".csv");
    }
    export_plotscript(files, (out_dir / "plot_traces.py").string());
  }
  return result;
}

}  // namespace sea
