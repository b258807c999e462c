#include "sea/controllers.hpp"

#include <cmath>

#include <Eigen/LU>

#include "sea/error.hpp"
#include "sea/lti_analysis.hpp"

namespace sea {

void DobConfig::validate(double omega) const {
  if (!(g_ob > 0.0) || !(J_m_nominal > 0.0)) {
    throw Error(ErrorCategory::kConfig, "observer: g_ob and J_m must be positive");
  }
  if (g_ob < 10.0 * omega) {
    throw Error(ErrorCategory::kConfig, "observer: g_ob must be at least ten times the loop bandwidth");
  }
}

DisturbanceObserver::DisturbanceObserver(const DobConfig& cfg, double dt)
    : cfg_(cfg), decay_(std::exp(-cfg.g_ob * dt)) {
  if (!(dt > 0.0)) throw Error(ErrorCategory::kConfig, "observer: dt must be positive");
}

double DisturbanceObserver::estimate(double dtheta) const {
  return filtered_ - cfg_.g_ob * cfg_.J_m_nominal * dtheta;
}

void DisturbanceObserver::update(double dtheta, double tau_applied) {
  const double input = tau_applied + cfg_.g_ob * cfg_.J_m_nominal * dtheta;
  filtered_ = decay_ * filtered_ + (1.0 - decay_) * input;
}

double rrc_acceleration(const PlantState& x, double q_d, const RrcGains& g, double gravity_est,
                        const PlantParams& p) {
  const double theta_d = q_d + gravity_est / p.K_f;
  return g.K_p * (theta_d - x.theta) - g.K_v * x.dtheta + g.K_r * (gravity_est - p.K_f * (x.theta - x.q));
}

double rrc_control(const PlantState& x, double q_d, const RrcGains& gains, double gravity_est,
                   double dob_out, const PlantParams& params) {
  return params.J_m * rrc_acceleration(x, q_d, gains, gravity_est, params) + dob_out;
}

double exact_gravity_correction(const PlantState& x, const RrcGains& g, const PlantParams& p) {
  // With theta' = theta - G(q)/K_f the link obeys J_a q'' = K_f (theta' - q);
  // these terms make theta' follow the linear RRC law exactly.
  const double slope = gravity_torque_slope(p, x.q, p.m_0);
  const double curvature = gravity_torque_curvature(p, x.q, p.m_0);
  const double qdd = (p.K_f * (x.theta - x.q) - gravity_torque(p, x.q, p.m_0)) / p.J_a;
  return (g.K_v * slope * x.dq + curvature * x.dq * x.dq + slope * qdd) / p.K_f;
}

AdaptationLaw::AdaptationLaw(const NominalModel& model, double T_s) : T_s_(T_s) {
  if (!(T_s > 0.0)) throw Error(ErrorCategory::kConfig, "adaptation: T_s must be positive");
  exp_ = matrix_exponential(model.A_m, T_s);
  phi_ = zoh_integral(model.A_m, T_s);
  B_ = model.input_matrix();

  const Eigen::FullPivLU<Eigen::Matrix4d> phi_lu(phi_);
  if (!phi_lu.isInvertible() || phi_lu.rcond() < 1e-13) {
    throw Error(ErrorCategory::kNumeric, "adaptation: phi(T_s) is numerically singular");
  }
  const Eigen::FullPivLU<Eigen::Matrix4d> b_lu(B_);
  if (!b_lu.isInvertible()) throw Error(ErrorCategory::kNumeric, "adaptation: [B_m B_um] is singular");
  disturbance_map_ = b_lu.solve(phi_lu.inverse());
  gain_ = -disturbance_map_ * exp_;
}

Vector4 AdaptationLaw::adaptation_update(const Vector4& x_tilde) const { return gain_ * x_tilde; }

Vector4 AdaptationLaw::predictor_step(const Vector4& x, double matched, const Vector3& unmatched) const {
  Vector4 input;
  input << unmatched, matched;  // B_m = e4, B_um = [e1 e2 e3]
  return exp_ * x + phi_ * input;
}

Vector4 AdaptationLaw::equivalent_disturbance(const Vector4& x_start, const Vector4& x_end,
                                              double matched_known, const Vector3& unmatched_known) const {
  Vector4 total = disturbance_map_ * (x_end - exp_ * x_start);
  total(0) -= matched_known;
  total.tail<3>() -= unmatched_known;
  return total;
}

AdaptiveControlFilter::AdaptiveControlFilter(const L1Config& cfg, const NominalModel& model)
    : K_g_(model.K_g) {
  cfg.validate(model);
  lowpass_ = DiscreteStateSpace::bilinear(realize(filter_C(cfg)), cfg.T_s);
  for (int j = 0; j < 3; ++j) {
    unmatched_[j] = DiscreteStateSpace::bilinear(realize(filter_C_Hmum(cfg, model, j)), cfg.T_s);
    unmatched_dc_[j] = Hmum_dc_gain(model, j);
  }
}

double AdaptiveControlFilter::step(double sigma1, const Vector3& sigma2, double q_d) {
  double u2 = -lowpass_.step(sigma1 - K_g_ * q_d);
  for (int j = 0; j < 3; ++j) u2 -= unmatched_[j].step(sigma2(j));
  return u2;
}

void AdaptiveControlFilter::reset() {
  lowpass_.reset();
  for (auto& f : unmatched_) f.reset();
}

double AdaptiveControlFilter::dc_output(double sigma1, const Vector3& sigma2, double q_d) const {
  double u2 = -(sigma1 - K_g_ * q_d);
  for (int j = 0; j < 3; ++j) u2 -= unmatched_dc_[j] * sigma2(j);
  return u2;
}

L1AdaptiveController::L1AdaptiveController(const NominalModel& model, const L1Config& cfg)
    : cfg_(cfg), law_(model, cfg.T_s), filter_(cfg, model) {}

void L1AdaptiveController::reset(const Vector4& x0) {
  x_hat_ = x0;
  filter_.reset();
  last_ = L1Sample{};
}

L1Sample L1AdaptiveController::update(const Vector4& x, double q_d, double matched_known,
                                      const Vector3& unmatched_known) {
  L1Sample s;
  s.x_tilde = x_hat_ - x;
  s.sigma_hat = law_.adaptation_update(s.x_tilde);
  s.u2 = filter_.step(s.sigma_hat(0), s.sigma_hat.tail<3>(), q_d);
  x_hat_ = law_.predictor_step(x_hat_, s.u2 + matched_known + s.sigma_hat(0),
                               s.sigma_hat.tail<3>() + unmatched_known);
  last_ = s;
  return s;
}

ReferenceSystem::ReferenceSystem(const NominalModel& model, const L1Config& cfg)
    : law_(model, cfg.T_s), filter_(cfg, model) {}

void ReferenceSystem::reset(const Vector4& x0) {
  x_r_ = x0;
  u2_ = 0.0;
  filter_.reset();
}

const Vector4& ReferenceSystem::step(double sigma1, const Vector3& sigma2, double q_d, double matched_known,
                                     const Vector3& unmatched_known) {
  u2_ = filter_.step(sigma1, sigma2, q_d);
  x_r_ = law_.predictor_step(x_r_, u2_ + matched_known + sigma1, sigma2 + unmatched_known);
  return x_r_;
}

RrcController::RrcController(const PlantParams& params, GravityCompensation gravity)
    : params_(params), gains_(build_rrc_gains(params)), gravity_(gravity) {}

ControlOutput RrcController::step(const PlantState& x, double q_d, double dob_out) const {
  const double G = gravity_ == GravityCompensation::kNone ? 0.0 : gravity_torque(params_, x.q, params_.m_0);
  ControlOutput out;
  out.u1 = rrc_acceleration(x, q_d, gains_, G, params_);
  if (gravity_ == GravityCompensation::kExact) out.u1 += exact_gravity_correction(x, gains_, params_);
  out.tau_m = params_.J_m * out.u1 + dob_out;
  return out;
}

namespace {

int period_ratio(double T_s, double control_period) {
  if (!(control_period > 0.0)) throw Error(ErrorCategory::kConfig, "control period must be positive");
  const double r = T_s / control_period;
  const double rounded = std::round(r);
  if (rounded < 1.0 || std::abs(r - rounded) > 1e-9 * rounded) {
    throw Error(ErrorCategory::kConfig, "T_s must be an integer multiple of the control period");
  }
  return static_cast<int>(rounded);
}

}  // namespace

L1ResonanceRatioController::L1ResonanceRatioController(const PlantParams& params, const L1Config& cfg,
                                                       GravityCompensation gravity, double control_period)
    : params_(params),
      gains_(build_rrc_gains(params)),
      model_(build_nominal_model(params, gains_)),
      gravity_(gravity),
      adaptive_(model_, cfg),
      ratio_(period_ratio(cfg.T_s, control_period)) {
  if (gravity == GravityCompensation::kExact) {
    throw Error(ErrorCategory::kConfig, "L1 controller supports gravity compensation none|static");
  }
}

void L1ResonanceRatioController::reset(const PlantState& x0) {
  adaptive_.reset(x0.as_vector());
  tick_ = 0;
  u2_ = 0.0;
  held_matched_ = 0.0;
  held_unmatched_.setZero();
}

ControlOutput L1ResonanceRatioController::step(const PlantState& x, double q_d, double dob_out) {
  ControlOutput out;
  const Vector4 xv = x.as_vector();
  if (gravity_ == GravityCompensation::kStatic) {
    // RRC gravity terms K_p G / K_f + K_r G on the matched channel; the
    // predictor sees the nominal gravity it cancels on the link channel.
    const double G = gravity_torque(params_, x.q, params_.m_0);
    out.u_ff = (gains_.K_p / params_.K_f + gains_.K_r) * G;
  }
  if (tick_ % ratio_ == 0) {
    held_matched_ = out.u_ff;
    held_unmatched_.setZero();
    if (gravity_ == GravityCompensation::kStatic) {
      held_unmatched_(1) = -gravity_torque(params_, x.q, params_.m_0) / params_.J_a;
    }
    u2_ = adaptive_.update(xv, q_d, held_matched_, held_unmatched_).u2;
    out.adapted = true;
  }
  ++tick_;
  out.u1 = -gains_.K * xv;
  out.u2 = u2_;
  out.tau_m = params_.J_m * (out.u1 + out.u2 + out.u_ff) + dob_out;
  return out;
}

}  // namespace sea
