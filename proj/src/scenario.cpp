#include "sea/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace sea {

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kRrc: return "rrc";
    case ControllerKind::kL1ac: return "l1ac";
    case ControllerKind::kL1acNoGravity: return "l1ac-no-gc";
  }
  return "?";
}

std::string_view to_string(DobMode mode) { return mode == DobMode::kIdeal ? "ideal" : "observer"; }

std::string_view to_string(GravityCompensation mode) {
  switch (mode) {
    case GravityCompensation::kNone: return "none";
    case GravityCompensation::kStatic: return "static";
    case GravityCompensation::kExact: return "exact";
  }
  return "?";
}

GravityCompensation ScenarioConfig::gravity_mode() const {
  if (gravity) return *gravity;
  return controller == ControllerKind::kL1acNoGravity ? GravityCompensation::kNone : GravityCompensation::kStatic;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCategory::kConfig, "scenario: " + msg); };
  if (!(duration > 0.0) || !std::isfinite(duration)) fail("duration must be positive");
  if (!(control_period > 0.0) || control_period > duration) fail("control_period must be in (0, duration]");
  if (!std::isfinite(step_amplitude) || !std::isfinite(step_start) || step_start < 0.0) {
    fail("reference step must be finite and start at t >= 0");
  }
  if (substeps < 1) fail("substeps must be >= 1");
  if (decimation < 1) fail("decimation must be >= 1");
  if (torque_limit && !(*torque_limit > 0.0)) fail("torque_limit must be positive");
  plant.validate();
  environment.validate();
  if (dob == DobMode::kObserver) observer.validate(std::sqrt(plant.K_f / plant.J_a));
  if (controller != ControllerKind::kRrc && gravity_mode() == GravityCompensation::kExact) {
    fail("gravity = exact is only available for the rrc controller");
  }
  if (controller == ControllerKind::kL1acNoGravity && gravity_mode() != GravityCompensation::kNone) {
    fail("l1ac-no-gc runs without gravity compensation");
  }
}

namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"name", "controller", "duration", "decimation", "reference_system"}},
      {"reference", {"amplitude", "start"}},
      {"controller",
       {"gravity", "dob", "control_period", "T_s", "T", "K_a", "g_ob", "torque_limit"}},
      {"plant", {"J_m", "J_a", "K_f", "G_0", "m_0", "load_mass", "K_t", "f_m", "substeps"}},
      {"environment", {"K_e", "q_0", "bilateral"}},
  };
  return keys;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCategory::kConfig, "scenario: '" + key + "' is not a number: '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCategory::kConfig, "scenario: '" + key + "' is not an integer: '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCategory::kConfig, "scenario: '" + key + "' is not a boolean: '" + text + "'");
}

ControllerKind to_controller(const std::string& text) {
  if (text == "rrc") return ControllerKind::kRrc;
  if (text == "l1ac") return ControllerKind::kL1ac;
  if (text == "l1ac-no-gc") return ControllerKind::kL1acNoGravity;
  throw Error(ErrorCategory::kConfig, "scenario: unknown controller '" + text + "' (rrc|l1ac|l1ac-no-gc)");
}

GravityCompensation to_gravity(const std::string& text) {
  if (text == "none") return GravityCompensation::kNone;
  if (text == "static") return GravityCompensation::kStatic;
  if (text == "exact") return GravityCompensation::kExact;
  throw Error(ErrorCategory::kConfig, "scenario: unknown gravity mode '" + text + "' (none|static|exact)");
}

DobMode to_dob(const std::string& text) {
  if (text == "observer") return DobMode::kObserver;
  if (text == "ideal") return DobMode::kIdeal;
  throw Error(ErrorCategory::kConfig, "scenario: unknown dob mode '" + text + "' (observer|ideal)");
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorCategory::kConfig, std::string("scenario: ") + e.message() + " at line " +
                                            std::to_string(e.line()));
  }

  ScenarioConfig cfg;
  for (const auto& [section, body] : tree) {
    auto it = allowed_keys().find(section);
    if (it == allowed_keys().end() || body.data().size() > 0) {
      throw Error(ErrorCategory::kConfig, "scenario: unexpected section or top-level key '" + section + "'");
    }
    for (const auto& [key, node] : body) {
      if (!it->second.count(key)) {
        throw Error(ErrorCategory::kConfig, "scenario: unknown key '" + key + "' in [" + section + "]");
      }
      const std::string v = node.data();
      const std::string path = section + "." + key;
      if (section == "scenario") {
        if (key == "name") cfg.name = v;
        else if (key == "controller") cfg.controller = to_controller(v);
        else if (key == "duration") cfg.duration = to_double(path, v);
        else if (key == "decimation") cfg.decimation = to_int(path, v);
        else if (key == "reference_system") cfg.reference_system = to_bool(path, v);
      } else if (section == "reference") {
        if (key == "amplitude") cfg.step_amplitude = to_double(path, v);
        else if (key == "start") cfg.step_start = to_double(path, v);
      } else if (section == "controller") {
        if (key == "gravity") cfg.gravity = to_gravity(v);
        else if (key == "dob") cfg.dob = to_dob(v);
        else if (key == "control_period") cfg.control_period = to_double(path, v);
        else if (key == "T_s") cfg.l1.T_s = to_double(path, v);
        else if (key == "T") cfg.l1.T = to_double(path, v);
        else if (key == "K_a") cfg.l1.K_a = to_double(path, v);
        else if (key == "g_ob") cfg.observer.g_ob = to_double(path, v);
        else if (key == "torque_limit") cfg.torque_limit = to_double(path, v);
      } else if (section == "plant") {
        if (key == "J_m") cfg.plant.J_m = to_double(path, v);
        else if (key == "J_a") cfg.plant.J_a = to_double(path, v);
        else if (key == "K_f") cfg.plant.K_f = to_double(path, v);
        else if (key == "G_0") cfg.plant.G_0 = to_double(path, v);
        else if (key == "m_0") cfg.plant.m_0 = to_double(path, v);
        else if (key == "load_mass") cfg.plant.m = to_double(path, v);
        else if (key == "K_t") cfg.plant.K_t = to_double(path, v);
        else if (key == "f_m") cfg.plant.f_m = to_double(path, v);
        else if (key == "substeps") cfg.substeps = to_int(path, v);
      } else if (section == "environment") {
        if (key == "K_e") cfg.environment.K_e = to_double(path, v);
        else if (key == "q_0") cfg.environment.q_0 = to_double(path, v);
        else if (key == "bilateral") cfg.environment.bilateral = to_bool(path, v);
      }
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + e.what());
  }
}

std::string format_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << cfg.name << "\n"
      << "controller = " << to_string(cfg.controller) << "\n"
      << "duration = " << fmt(cfg.duration) << "\n"
      << "decimation = " << cfg.decimation << "\n"
      << "reference_system = " << (cfg.reference_system ? "true" : "false") << "\n\n"
      << "[reference]\n"
      << "amplitude = " << fmt(cfg.step_amplitude) << "\n"
      << "start = " << fmt(cfg.step_start) << "\n\n"
      << "[controller]\n";
  if (cfg.gravity) out << "gravity = " << to_string(*cfg.gravity) << "\n";
  out << "dob = " << to_string(cfg.dob) << "\n"
      << "control_period = " << fmt(cfg.control_period) << "\n"
      << "T_s = " << fmt(cfg.l1.T_s) << "\n"
      << "T = " << fmt(cfg.l1.T) << "\n"
      << "K_a = " << fmt(cfg.l1.K_a) << "\n"
      << "g_ob = " << fmt(cfg.observer.g_ob) << "\n";
  if (cfg.torque_limit) out << "torque_limit = " << fmt(*cfg.torque_limit) << "\n";
  out << "\n[plant]\n"
      << "J_m = " << fmt(cfg.plant.J_m) << "\n"
      << "J_a = " << fmt(cfg.plant.J_a) << "\n"
      << "K_f = " << fmt(cfg.plant.K_f) << "\n"
      << "G_0 = " << fmt(cfg.plant.G_0) << "\n"
      << "m_0 = " << fmt(cfg.plant.m_0) << "\n"
      << "load_mass = " << fmt(cfg.plant.m) << "\n"
      << "K_t = " << fmt(cfg.plant.K_t) << "\n"
      << "f_m = " << fmt(cfg.plant.f_m) << "\n"
      << "substeps = " << cfg.substeps << "\n\n"
      << "[environment]\n"
      << "K_e = " << fmt(cfg.environment.K_e) << "\n"
      << "q_0 = " << fmt(cfg.environment.q_0) << "\n"
      << "bilateral = " << (cfg.environment.bilateral ? "true" : "false") << "\n";
  return out.str();
}

const std::array<std::string_view, kTraceColumnCount>& trace_column_names() {
  static const std::array<std::string_view, kTraceColumnCount> names = {
      "t [s]",          "q [rad]",          "dq [rad/s]",         "theta [rad]",
      "dtheta [rad/s]", "tau_m [N m]",      "current [permille]", "sigma22_hat [rad/s^2]",
      "xtilde_norm [-]", "u1 [rad/s^2]",    "u2 [rad/s^2]",       "xr_err [-]"};
  return names;
}

std::vector<double> RunTrace::column(TraceColumn c) const {
  std::vector<double> out(rows.size());
  std::transform(rows.begin(), rows.end(), out.begin(), [c](const TraceRow& r) { return r[c]; });
  return out;
}

bool RunTrace::operator==(const RunTrace& other) const {
  if (rows.size() != other.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < kTraceColumnCount; ++c) {
      // Bitwise comparison: the determinism check must not hide -0.0 or NaN payloads.
      if (std::memcmp(&rows[i][c], &other.rows[i][c], sizeof(double)) != 0) return false;
    }
  }
  return true;
}

namespace {

// Bookkeeping for the reference system: it is advanced once the plant state
// at the end of an adaptation period is known.
struct PendingPeriod {
  Vector4 x_start;
  double matched_known;   // u2 + gravity feedforward applied over the period
  double feedforward;
  Vector3 unmatched_known;
};

}  // namespace

RunTrace run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const PlantParams& p = cfg.plant;
  const double dt = cfg.control_period;
  const double h = dt / cfg.substeps;
  const long n_steps = std::lround(std::floor(cfg.duration / dt + 1e-9));
  const GravityCompensation gravity = cfg.gravity_mode();
  const bool adaptive = cfg.controller != ControllerKind::kRrc;

  std::optional<RrcController> rrc;
  std::optional<L1ResonanceRatioController> l1;
  std::optional<ReferenceSystem> reference;
  if (adaptive) {
    l1.emplace(p, cfg.l1, gravity, dt);
    if (cfg.reference_system) reference.emplace(l1->model(), cfg.l1);
  } else {
    rrc.emplace(p, gravity);
  }
  DobConfig observer = cfg.observer;
  observer.J_m_nominal = p.J_m;
  DisturbanceObserver dob(observer, dt);

  PlantState x;
  if (l1) l1->reset(x);
  if (reference) reference->reset(x.as_vector());
  std::optional<PendingPeriod> pending;
  double xr_err = 0.0;

  RunTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(n_steps / cfg.decimation + 2));

  for (long k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double q_d = cfg.q_d(t);
    const double tau_hat = cfg.dob == DobMode::kIdeal ? p.f_m * x.dtheta + p.K_f * (x.theta - x.q)
                                                      : dob.estimate(x.dtheta);

    ControlOutput out;
    if (l1) {
      const Vector4 xv = x.as_vector();
      const bool boundary = k % l1->ratio() == 0;
      if (boundary && reference && pending) {
        const Vector4 sigma = l1->adaptive().law().equivalent_disturbance(
            pending->x_start, xv, pending->matched_known, pending->unmatched_known);
        xr_err = (reference->state() - pending->x_start).norm();
        reference->step(sigma(0), sigma.tail<3>(), q_d, pending->feedforward, pending->unmatched_known);
      }
      out = l1->step(x, q_d, tau_hat);
      if (out.adapted && reference) {
        pending = PendingPeriod{xv, out.u2 + l1->held_matched(), l1->held_matched(), l1->held_unmatched()};
      }
    } else {
      out = rrc->step(x, q_d, tau_hat);
    }
    double tau = out.tau_m;
    if (cfg.torque_limit) tau = std::clamp(tau, -*cfg.torque_limit, *cfg.torque_limit);

    if (k % cfg.decimation == 0) {
      TraceRow row{};
      row[kColT] = t;
      row[kColQ] = x.q;
      row[kColDq] = x.dq;
      row[kColTheta] = x.theta;
      row[kColDtheta] = x.dtheta;
      row[kColTau] = tau;
      row[kColCurrent] = tau / p.K_t;
      row[kColU1] = out.u1;
      row[kColU2] = out.u2;
      if (l1) {
        const L1Sample& s = l1->adaptive().last();
        row[kColSigma22] = s.sigma_hat(2);
        row[kColXtilde] = s.x_tilde.norm();
        row[kColXrErr] = xr_err;
      }
      trace.rows.push_back(row);
    }
    if (k == n_steps) break;

    if (!std::isfinite(tau)) {
      throw SimulationError("non-finite motor torque at t = " + std::to_string(t), std::move(trace));
    }
    dob.update(x.dtheta, tau);
    try {
      for (int i = 0; i < cfg.substeps; ++i) x = integrate_step(x, tau, h, p, cfg.environment);
    } catch (const Error& e) {
      throw SimulationError(std::string(e.what()) + " at t = " + std::to_string(t), std::move(trace));
    }
  }
  return trace;
}

}  // namespace sea
