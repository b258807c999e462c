#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sea/controllers.hpp"
#include "sea/error.hpp"
#include "sea/l1_config.hpp"
#include "sea/plant.hpp"

namespace sea {

enum class ControllerKind { kRrc, kL1ac, kL1acNoGravity };
enum class DobMode {
  kObserver,  // discrete velocity-form observer
  kIdeal,     // exact friction plus spring reaction from the measured state
};

std::string_view to_string(ControllerKind kind);
std::string_view to_string(DobMode mode);
std::string_view to_string(GravityCompensation mode);

struct ScenarioConfig {
  std::string name = "scenario";
  ControllerKind controller = ControllerKind::kRrc;
  // Unset: static for RRC and L1AC, none for L1AC without gravity compensation.
  std::optional<GravityCompensation> gravity;
  DobMode dob = DobMode::kObserver;

  double step_amplitude = 1.5707963267948966;  // q_d [rad]
  double step_start = 0.0;                     // [s]
  double duration = 2.0;                       // [s]

  double control_period = 1e-3;  // inner loop and observer period [s]
  L1Config l1;                   // T_s must be a multiple of control_period
  DobConfig observer;
  std::optional<double> torque_limit;  // symmetric clamp on tau_m [N m]

  PlantParams plant;  // plant.m is the load mass
  EnvironmentModel environment;
  int substeps = 4;    // RK4 steps per control period
  int decimation = 1;  // keep every n-th control sample in the trace

  // Track the reference system next to the L1 loop (xr_err column).
  bool reference_system = false;

  GravityCompensation gravity_mode() const;
  double q_d(double t) const { return t >= step_start ? step_amplitude : 0.0; }

  /// Throws sea::Error (kConfig).
  void validate() const;
};

/// INI text with sections [scenario], [reference], [controller], [plant] and
/// [environment]. Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& text);
/// Throws sea::Error (kIo) when the file cannot be read.
ScenarioConfig load_scenario(const std::string& path);
/// Inverse of parse_scenario.
std::string format_scenario(const ScenarioConfig& cfg);

enum TraceColumn {
  kColT,
  kColQ,
  kColDq,
  kColTheta,
  kColDtheta,
  kColTau,
  kColCurrent,
  kColSigma22,
  kColXtilde,
  kColU1,
  kColU2,
  kColXrErr,
  kTraceColumnCount
};

/// CSV header names including units, in column order.
const std::array<std::string_view, kTraceColumnCount>& trace_column_names();

using TraceRow = std::array<double, kTraceColumnCount>;

/// Uniformly sampled record of one run. sigma22_hat, xtilde_norm and the
/// adaptive values hold their last update between adaptation instants;
/// xr_err compares the reference system with the plant one T_s late.
struct RunTrace {
  std::vector<TraceRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
  std::vector<double> column(TraceColumn c) const;
  bool operator==(const RunTrace& other) const;
};

/// Raised when the simulation leaves the finite range; carries the samples
/// recorded so far.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, RunTrace partial)
      : Error(ErrorCategory::kNumeric, what), partial_(std::move(partial)) {}
  const RunTrace& partial() const { return partial_; }

 private:
  RunTrace partial_;
};

/// Deterministic closed-loop simulation starting at rest at q = theta = 0.
RunTrace run_scenario(const ScenarioConfig& cfg);

}  // namespace sea
