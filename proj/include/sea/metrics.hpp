#pragma once

#include <optional>

#include "sea/scenario.hpp"

namespace sea {

struct MetricsOptions {
  double q_d = 1.5707963267948966;  // step target [rad]
  double step_start = 0.0;          // [s]
  double omega = 0.0;               // nominal bandwidth for the rise delay; 0 skips it
  std::optional<double> contact_position;  // q_0 of the wall, if any
  double settling_band = 0.02;             // relative to |q_d|

  static MetricsOptions from_scenario(const ScenarioConfig& cfg);
};

struct MetricsReport {
  double static_error = 0.0;    // mean q over the last 10% of samples minus q_d [rad]
  double overshoot = 0.0;       // percent of |q_d|, >= 0
  std::optional<double> settling_time;  // absent when the trace ends outside the band
  double peak_current = 0.0;    // max |current| [permille]
  std::optional<double> rise_delay;     // L2-optimal shift against the nominal response [s]
  std::optional<double> contact_time;   // first sample with q > q_0 [s]
  double peak_current_after_contact = 0.0;
  double peak_speed_after_contact = 0.0;  // max |dq| [rad/s]
};

/// Throws sea::Error (kAnalysis) for an empty trace.
MetricsReport compute_metrics(const RunTrace& trace, const MetricsOptions& options);

/// Shift tau minimizing sum_k (q(t_k) - y(t_k - t_start - tau))^2 with y the
/// nominal closed-form step response, searched over [-0.25, 1] s.
double rise_delay(const RunTrace& trace, const MetricsOptions& options);

}  // namespace sea
