#include "sea/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sea/lti_analysis.hpp"

namespace sea {

MetricsOptions MetricsOptions::from_scenario(const ScenarioConfig& cfg) {
  MetricsOptions o;
  o.q_d = cfg.step_amplitude;
  o.step_start = cfg.step_start;
  o.omega = std::sqrt(cfg.plant.K_f / cfg.plant.J_a);
  if (cfg.environment.K_e > 0.0) o.contact_position = cfg.environment.q_0;
  return o;
}

namespace {

double misfit(const RunTrace& trace, const MetricsOptions& o, double shift) {
  double sum = 0.0;
  for (const TraceRow& r : trace.rows) {
    const double e = r[kColQ] - analytic_nominal_response(o.q_d, o.omega, r[kColT] - o.step_start - shift);
    sum += e * e;
  }
  return sum;
}

}  // namespace

double rise_delay(const RunTrace& trace, const MetricsOptions& o) {
  if (trace.size() < 2) throw Error(ErrorCategory::kAnalysis, "rise_delay: need at least two samples");
  if (!(o.omega > 0.0)) throw Error(ErrorCategory::kAnalysis, "rise_delay: omega must be positive");
  const double dt = trace.rows[1][kColT] - trace.rows[0][kColT];
  constexpr double kLo = -0.25, kHi = 1.0;
  const int n = static_cast<int>(std::ceil((kHi - kLo) / dt));
  double best = kLo, best_cost = misfit(trace, o, kLo);
  for (int i = 1; i <= n; ++i) {
    const double s = kLo + i * dt;
    const double c = misfit(trace, o, s);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  // Golden-section refinement inside the bracketing grid cells.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best - dt, b = best + dt;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = misfit(trace, o, x1), f2 = misfit(trace, o, x2);
  for (int it = 0; it < 60 && b - a > 1e-9; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = misfit(trace, o, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = misfit(trace, o, x2);
    }
  }
  const double refined = 0.5 * (a + b);
  return misfit(trace, o, refined) <= best_cost ? refined : best;
}

MetricsReport compute_metrics(const RunTrace& trace, const MetricsOptions& o) {
  if (trace.empty()) throw Error(ErrorCategory::kAnalysis, "metrics: empty trace");
  MetricsReport m;
  const std::size_t n = trace.size();

  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += trace.rows[i][kColQ];
  m.static_error = sum / static_cast<double>(tail) - o.q_d;

  const double sign = o.q_d < 0.0 ? -1.0 : 1.0;
  const double scale = std::abs(o.q_d);
  double excess = 0.0;
  for (const TraceRow& r : trace.rows) excess = std::max(excess, sign * (r[kColQ] - o.q_d));
  m.overshoot = scale > 0.0 ? 100.0 * excess / scale : 0.0;

  const double band = o.settling_band * scale;
  std::optional<std::size_t> last_out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(trace.rows[i][kColQ] - o.q_d) > band) last_out = i;
  }
  if (!last_out) {
    m.settling_time = 0.0;
  } else if (*last_out + 1 < n) {
    m.settling_time = std::max(0.0, trace.rows[*last_out + 1][kColT] - o.step_start);
  }

  for (const TraceRow& r : trace.rows) m.peak_current = std::max(m.peak_current, std::abs(r[kColCurrent]));

  if (o.omega > 0.0 && n >= 2) m.rise_delay = rise_delay(trace, o);

  if (o.contact_position) {
    for (const TraceRow& r : trace.rows) {
      if (!m.contact_time) {
        if (r[kColQ] > *o.contact_position) m.contact_time = r[kColT];
        else continue;
      }
      m.peak_current_after_contact = std::max(m.peak_current_after_contact, std::abs(r[kColCurrent]));
      m.peak_speed_after_contact = std::max(m.peak_speed_after_contact, std::abs(r[kColDq]));
    }
  }
  return m;
}

}  // namespace sea
