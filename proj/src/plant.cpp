#include "sea/plant.hpp"

#include <cmath>
#include <string>

#include "sea/error.hpp"

namespace sea {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCategory::kConfig, what);
}

}  // namespace

void PlantParams::validate() const {
  require(J_m > 0.0, "plant: J_m must be positive");
  require(J_a > 0.0, "plant: J_a must be positive");
  require(K_f > 0.0, "plant: K_f must be positive");
  require(m_0 > 0.0, "plant: m_0 must be positive");
  require(K_t > 0.0, "plant: K_t must be positive");
  require(f_m >= 0.0, "plant: f_m must be non-negative");
  require(m >= 0.0, "plant: load mass must be non-negative");
  require(std::isfinite(G_0), "plant: G_0 must be finite");
}

bool PlantState::is_finite() const {
  return std::isfinite(q) && std::isfinite(dq) && std::isfinite(theta) && std::isfinite(dtheta);
}

void EnvironmentModel::validate() const {
  require(K_e >= 0.0, "environment: K_e must be non-negative");
  require(std::isfinite(q_0), "environment: q_0 must be finite");
}

double gravity_torque(const PlantParams& params, double q, double mass) {
  return mass / params.m_0 * params.G_0 * std::sin(q);
}

double gravity_torque_slope(const PlantParams& params, double q, double mass) {
  return mass / params.m_0 * params.G_0 * std::cos(q);
}

double gravity_torque_curvature(const PlantParams& params, double q, double mass) {
  return -gravity_torque(params, q, mass);
}

double gravity_mismatch(const PlantParams& params, double q) {
  return gravity_torque(params, q, params.m) - gravity_torque(params, q, params.m_0);
}

double disturbance_torque(const EnvironmentModel& env, const PlantParams& params, double q) {
  const double penetration = q - env.q_0;
  const double contact = (env.bilateral || penetration > 0.0) ? env.K_e * penetration : 0.0;
  return gravity_mismatch(params, q) + contact;
}

PlantState plant_rhs(const PlantState& s, double tau_m, const PlantParams& p,
                     const EnvironmentModel& env) {
  const double spring = p.K_f * (s.theta - s.q);
  const double tau_dis = disturbance_torque(env, p, s.q);
  const double gravity = gravity_torque(p, s.q, p.m_0);
  const double friction = p.f_m * s.dtheta;
  return {s.dq, (spring - tau_dis - gravity) / p.J_a, s.dtheta, (tau_m - friction - spring) / p.J_m};
}

PlantState integrate_step(const PlantState& state, double tau_m, double dt, const PlantParams& params,
                          const EnvironmentModel& env) {
  if (!(dt > 0.0)) throw Error(ErrorCategory::kConfig, "integrate_step: dt must be positive");
  if (!state.is_finite() || !std::isfinite(tau_m)) {
    throw Error(ErrorCategory::kNumeric, "integrate_step: non-finite state or input");
  }
  const Vector4 x = state.as_vector();
  auto f = [&](const Vector4& y) {
    return plant_rhs(PlantState::from_vector(y), tau_m, params, env).as_vector();
  };
  const Vector4 k1 = f(x);
  const Vector4 k2 = f(x + 0.5 * dt * k1);
  const Vector4 k3 = f(x + 0.5 * dt * k2);
  const Vector4 k4 = f(x + dt * k3);
  const PlantState next = PlantState::from_vector(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  if (!next.is_finite()) {
    throw Error(ErrorCategory::kNumeric, "integrate_step: state diverged");
  }
  return next;
}

double mechanical_energy(const PlantState& s, const PlantParams& p) {
  const double deflection = s.theta - s.q;
  return 0.5 * p.J_a * s.dq * s.dq + 0.5 * p.J_m * s.dtheta * s.dtheta +
         0.5 * p.K_f * deflection * deflection;
}

}  // namespace sea
