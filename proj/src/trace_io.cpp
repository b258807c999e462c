#include "sea/trace_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sea {

namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::string number(double v) {
  std::string s;
  append_number(s, v);
  return s;
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open '" + path + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// CSV cells never contain commas here except in free-text error messages.
std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_trace_csv(const RunTrace& trace) {
  std::string out;
  const auto& names = trace_column_names();
  for (int c = 0; c < kTraceColumnCount; ++c) {
    if (c) out += ',';
    out += names[c];
  }
  out += '\n';
  out.reserve(out.size() + trace.size() * kTraceColumnCount * 22);
  for (const TraceRow& r : trace.rows) {
    for (int c = 0; c < kTraceColumnCount; ++c) {
      if (c) out += ',';
      append_number(out, r[c]);
    }
    out += '\n';
  }
  return out;
}

RunTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCategory::kIo, "trace: missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string expected;
  for (int c = 0; c < kTraceColumnCount; ++c) {
    if (c) expected += ',';
    expected += trace_column_names()[c];
  }
  if (line != expected) throw Error(ErrorCategory::kIo, "trace: unexpected header '" + line + "'");

  RunTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TraceRow row{};
    const char* p = line.data();
    const char* end = p + line.size();
    for (int c = 0; c < kTraceColumnCount; ++c) {
      auto [next, ec] = std::from_chars(p, end, row[c]);
      const bool last = c + 1 == kTraceColumnCount;
      if (ec != std::errc() || (last ? next != end : (next == end || *next != ','))) {
        throw Error(ErrorCategory::kIo, "trace: malformed value in line " + std::to_string(line_no));
      }
      p = next + 1;
    }
    trace.rows.push_back(row);
  }
  return trace;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::kIo, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCategory::kIo, "write to '" + path + "' failed");
}

void export_trace(const RunTrace& trace, const std::string& path) { write_text_file(path, format_trace_csv(trace)); }

RunTrace import_trace(const std::string& path) {
  try {
    return parse_trace_csv(read_file(path));
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + e.what());
  }
}

void export_plotscript(const std::vector<std::string>& csv_files, const std::string& path) {
  std::ostringstream py;
  py << "import os\n"
        "import sys\n"
        "\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n"
        "import numpy as np\n"
        "\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n"
        "FILES = [\n";
  for (const std::string& f : csv_files) py << "    \"" << f << "\",\n";
  py << "]\n"
        "\n"
        "\n"
        "def load(name):\n"
        "    data = np.genfromtxt(os.path.join(HERE, name), delimiter=\",\", names=True)\n"
        "    return data\n"
        "\n"
        "\n"
        "fig, axes = plt.subplots(3, 1, sharex=True, figsize=(7, 8))\n"
        "for name in FILES:\n"
        "    d = load(name)\n"
        "    cols = d.dtype.names\n"
        "    label = os.path.splitext(os.path.basename(name))[0]\n"
        "    axes[0].plot(d[cols[0]], d[cols[1]], label=label)\n"
        "    axes[1].plot(d[cols[0]], d[cols[6]], label=label)\n"
        "    axes[2].plot(d[cols[0]], d[cols[7]], label=label)\n"
        "axes[0].set_ylabel(\"q [rad]\")\n"
        "axes[1].set_ylabel(\"current [permille]\")\n"
        "axes[2].set_ylabel(\"sigma22_hat [rad/s^2]\")\n"
        "axes[2].set_xlabel(\"t [s]\")\n"
        "axes[0].legend(fontsize=\"small\")\n"
        "for ax in axes:\n"
        "    ax.grid(True)\n"
        "fig.tight_layout()\n"
        "out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, \"traces.png\")\n"
        "fig.savefig(out, dpi=120)\n";
  write_text_file(path, py.str());
}

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "name,controller,load_mass [kg],K_e [N m/rad],status,static_error [rad],overshoot [%],"
      "settling_time [s],peak_current [permille],rise_delay [s],contact_time [s],"
      "peak_current_after_contact [permille],peak_speed_after_contact [rad/s],error\n";
  for (const SummaryRow& r : rows) {
    out += quoted(r.name) + ',' + r.controller + ',' + number(r.load_mass) + ',' + number(r.contact_stiffness) + ',';
    if (!r.ok) {
      out += "failed,,,,,,,,," + quoted(r.error) + '\n';
      continue;
    }
    const MetricsReport& m = r.metrics;
    out += "ok," + number(m.static_error) + ',' + number(m.overshoot) + ',' + optional_number(m.settling_time) + ',' +
           number(m.peak_current) + ',' + optional_number(m.rise_delay) + ',' + optional_number(m.contact_time) +
           ',' + number(m.peak_current_after_contact) + ',' + number(m.peak_speed_after_contact) + ",\n";
  }
  return out;
}

std::string format_root_locus_csv(const RootLocusResult& locus) {
  std::string out = "lambda [1/s^2],root,real [1/s],imag [1/s],conjugate_pair\n";
  for (std::size_t i = 0; i < locus.lambda.size(); ++i) {
    for (std::size_t k = 0; k < locus.roots[i].size(); ++k) {
      out += number(locus.lambda[i]) + ',' + std::to_string(k) + ',' + number(locus.roots[i][k].real()) + ',' +
             number(locus.roots[i][k].imag()) + ',' + (locus.has_conjugate_pair[i] ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string format_condition_csv(const std::vector<ConditionRow>& rows) {
  std::string out = "T [s],K_a [1/s],G1_norm,G2_norm,Gd_norm,lhs,margin,best_rho,certified_rho,satisfied\n";
  for (const ConditionRow& r : rows) {
    const StabilityVerdict& v = r.verdict;
    out += number(r.T) + ',' + number(r.K_a) + ',' + number(v.norms.G_1) + ',' + number(v.norms.G_2) + ',' +
           number(v.norms.G_d) + ',' + number(v.lhs) + ',' + number(v.margin) + ',' + number(v.best_rho) + ',' +
           optional_number(v.certified_rho) + ',' + (v.satisfied ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace sea
