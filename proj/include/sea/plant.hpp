#pragma once

#include <Eigen/Core>

namespace sea {

using Vector4 = Eigen::Vector4d;

/// Physical constants of the series elastic actuator. Defaults are the
/// measured values of the reference test bench.
struct PlantParams {
  double J_m = 0.294;    // motor-side inertia [kg m^2]
  double J_a = 0.345;    // link-side inertia with nominal load [kg m^2]
  double K_f = 125.478;  // spring stiffness [N m/rad]
  double G_0 = 8.856;    // load torque at q = 90 deg, nominal load [N m]
  double m_0 = 1.5;      // nominal load mass [kg]
  double m = 1.5;        // actual load mass [kg]
  double K_t = 0.094;    // motor torque per permille of nominal current
  double f_m = 4.082;    // motor viscous friction [N m/(rad/s)]

  /// Throws sea::Error (kConfig) when a constant is out of range.
  void validate() const;
};

/// Link and motor positions/velocities, ordered as the state vector
/// x = [q, dq, theta, dtheta].
struct PlantState {
  double q = 0.0;
  double dq = 0.0;
  double theta = 0.0;
  double dtheta = 0.0;

  Vector4 as_vector() const { return {q, dq, theta, dtheta}; }
  static PlantState from_vector(const Vector4& x) { return {x(0), x(1), x(2), x(3)}; }
  bool is_finite() const;
};

/// Link-side environment: an elastic wall at q_0. The load-mass offset that
/// produces the gravity mismatch is PlantParams::m - PlantParams::m_0.
struct EnvironmentModel {
  double K_e = 0.0;        // contact stiffness [N m/rad]
  double q_0 = 0.0;        // contact onset position [rad]
  bool bilateral = false;  // spring acts on both sides of q_0

  void validate() const;
};

/// G(q) = (mass / m_0) G_0 sin(q).
double gravity_torque(const PlantParams& params, double q, double mass);

/// dG/dq and d2G/dq2 for the same model.
double gravity_torque_slope(const PlantParams& params, double q, double mass);
double gravity_torque_curvature(const PlantParams& params, double q, double mass);

/// Link-side disturbance tau_dis = dG(q) + K_e (q - q_0), with the contact
/// term active only for q > q_0 unless the wall is bilateral.
double disturbance_torque(const EnvironmentModel& env, const PlantParams& params, double q);

/// Time derivative of the state under motor torque tau_m.
PlantState plant_rhs(const PlantState& state, double tau_m, const PlantParams& params,
                     const EnvironmentModel& env);

/// One classical RK4 step with tau_m held over dt. Throws sea::Error
/// (kNumeric) if the input or the result is not finite.
PlantState integrate_step(const PlantState& state, double tau_m, double dt,
                          const PlantParams& params, const EnvironmentModel& env);

/// Spring-mass energy 1/2 J_a dq^2 + 1/2 J_m dtheta^2 + 1/2 K_f (theta - q)^2.
double mechanical_energy(const PlantState& state, const PlantParams& params);

/// Gravity mismatch dG(q) = G(q; m) - G(q; m_0).
double gravity_mismatch(const PlantParams& params, double q);

}  // namespace sea
