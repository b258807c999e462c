#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "sea/l1_config.hpp"
#include "sea/nominal_model.hpp"
#include "sea/plant.hpp"
#include "sea/state_space.hpp"

namespace sea {

using Vector3 = Eigen::Vector3d;

// ---------------------------------------------------------------------------
// Disturbance observer
// ---------------------------------------------------------------------------

struct DobConfig {
  double g_ob = 500.0;        // observer bandwidth [rad/s]
  double J_m_nominal = 0.294; // [kg m^2]

  /// g_ob must be positive and at least ten times the loop bandwidth omega.
  void validate(double omega) const;
};

/// Velocity-form observer: tau_hat = LPF(tau_m + g J_m dtheta) - g J_m dtheta,
/// with the first-order low-pass discretized exactly at period dt.
class DisturbanceObserver {
 public:
  DisturbanceObserver(const DobConfig& cfg, double dt);

  /// Estimate of friction plus spring reaction at the current sample.
  double estimate(double dtheta) const;
  /// Feed the torque applied over the sample that started at `dtheta`.
  void update(double dtheta, double tau_applied);
  void reset() { filtered_ = 0.0; }

 private:
  DobConfig cfg_;
  double decay_;
  double filtered_ = 0.0;
};

// ---------------------------------------------------------------------------
// Resonance ratio control
// ---------------------------------------------------------------------------

enum class GravityCompensation {
  kNone,    // G = 0 in the control law
  kStatic,  // nominal G(q) in the motor target and spring-torque feedback
  kExact,   // kStatic plus the G'(q) velocity and acceleration terms that make
            // the nominal closed loop exactly linear (RRC only)
};

/// Motor acceleration command u = K_p (theta_d - theta) - K_v dtheta
/// + K_r (G - K_f (theta - q)), theta_d = q_d + G / K_f.
double rrc_acceleration(const PlantState& x, double q_d, const RrcGains& gains, double gravity_est,
                        const PlantParams& params);

/// tau_m = J_m u + tau_hat_dob.
double rrc_control(const PlantState& x, double q_d, const RrcGains& gains, double gravity_est,
                   double dob_out, const PlantParams& params);

/// Extra acceleration that removes the gravity-induced motion of the
/// spring-balanced motor target from the closed loop (nominal mass).
double exact_gravity_correction(const PlantState& x, const RrcGains& gains, const PlantParams& params);

// ---------------------------------------------------------------------------
// Piecewise-constant adaptation
// ---------------------------------------------------------------------------

/// Precomputed sampled-data matrices for the predictor and the adaptation law
/// at period T_s.
class AdaptationLaw {
 public:
  /// Throws sea::Error (kNumeric) when phi(T_s) is numerically singular.
  AdaptationLaw(const NominalModel& model, double T_s);

  /// sigma_hat = -[B_m B_um]^-1 phi^-1 e^{A_m T_s} x_tilde, ordered
  /// [sigma1, sigma21, sigma22, sigma23].
  Vector4 adaptation_update(const Vector4& x_tilde) const;

  /// Exact zero-order-hold step of
  /// dx/dt = A_m x + B_m (matched) + B_um (unmatched).
  Vector4 predictor_step(const Vector4& x, double matched, const Vector3& unmatched) const;

  /// Piecewise-constant disturbance that carries x_start to x_end in one
  /// period given the known inputs.
  Vector4 equivalent_disturbance(const Vector4& x_start, const Vector4& x_end, double matched_known,
                                 const Vector3& unmatched_known) const;

  double period() const { return T_s_; }
  const Eigen::Matrix4d& transition() const { return exp_; }
  const Eigen::Matrix4d& phi() const { return phi_; }

 private:
  double T_s_;
  Eigen::Matrix4d exp_;
  Eigen::Matrix4d phi_;
  Eigen::Matrix4d B_;
  Eigen::Matrix4d gain_;
  Eigen::Matrix4d disturbance_map_;  // [B_m B_um]^-1 phi^-1
};

/// Discrete realization (bilinear, period T_s) of
/// u2 = -C(s) (sigma1 - K_g q_d) - sum_j C(s) H_m^-1(s) H_um,j(s) sigma2_j.
class AdaptiveControlFilter {
 public:
  AdaptiveControlFilter(const L1Config& cfg, const NominalModel& model);

  double step(double sigma1, const Vector3& sigma2, double q_d);
  void reset();

  /// Output for frozen inputs after the filters settle.
  double dc_output(double sigma1, const Vector3& sigma2, double q_d) const;

  const DiscreteStateSpace& lowpass() const { return lowpass_; }
  const DiscreteStateSpace& unmatched(int j) const { return unmatched_[j]; }

 private:
  DiscreteStateSpace lowpass_;
  std::array<DiscreteStateSpace, 3> unmatched_;
  std::array<double, 3> unmatched_dc_{};
  double K_g_;
};

struct L1Sample {
  Vector4 x_tilde = Vector4::Zero();
  Vector4 sigma_hat = Vector4::Zero();  // [sigma1, sigma21, sigma22, sigma23]
  double u2 = 0.0;
};

/// Predictor, adaptation law and control filter advanced once per T_s in
/// the order: prediction error, adaptation, control filter, prediction.
class L1AdaptiveController {
 public:
  L1AdaptiveController(const NominalModel& model, const L1Config& cfg);

  /// x_hat = x0, sigma_hat = 0, filter states zero.
  void reset(const Vector4& x0);

  /// `matched_known` and `unmatched_known` are inputs the predictor should
  /// treat as known over the coming period (gravity feedforward and the
  /// nominal gravity it cancels).
  L1Sample update(const Vector4& x, double q_d, double matched_known = 0.0,
                  const Vector3& unmatched_known = Vector3::Zero());

  const Vector4& x_hat() const { return x_hat_; }
  const L1Sample& last() const { return last_; }
  const AdaptationLaw& law() const { return law_; }
  const L1Config& config() const { return cfg_; }

 private:
  L1Config cfg_;
  AdaptationLaw law_;
  AdaptiveControlFilter filter_;
  Vector4 x_hat_ = Vector4::Zero();
  L1Sample last_;
};

/// Non-implementable comparison system driven by the true disturbances,
/// sharing the controller's sampled-data matrices and filter realization.
class ReferenceSystem {
 public:
  ReferenceSystem(const NominalModel& model, const L1Config& cfg);

  void reset(const Vector4& x0);
  const Vector4& step(double sigma1, const Vector3& sigma2, double q_d, double matched_known = 0.0,
                      const Vector3& unmatched_known = Vector3::Zero());
  const Vector4& state() const { return x_r_; }
  double u2() const { return u2_; }

 private:
  AdaptationLaw law_;
  AdaptiveControlFilter filter_;
  Vector4 x_r_ = Vector4::Zero();
  double u2_ = 0.0;
};

// ---------------------------------------------------------------------------
// Complete torque laws
// ---------------------------------------------------------------------------

struct ControlOutput {
  double tau_m = 0.0;
  double u1 = 0.0;    // state feedback part [rad/s^2]
  double u2 = 0.0;    // adaptive part [rad/s^2]
  double u_ff = 0.0;  // gravity feedforward [rad/s^2]
  bool adapted = false;
};

/// Baseline RRC with the observer output supplied by the caller.
class RrcController {
 public:
  RrcController(const PlantParams& params, GravityCompensation gravity);
  ControlOutput step(const PlantState& x, double q_d, double dob_out) const;
  const RrcGains& gains() const { return gains_; }

 private:
  PlantParams params_;
  RrcGains gains_;
  GravityCompensation gravity_;
};

/// u = -K x + u2 (+ gravity feedforward), tau_m = J_m u + tau_hat_dob. The
/// state feedback runs every control period; the adaptive part every
/// T_s = ratio * control period.
class L1ResonanceRatioController {
 public:
  /// Throws sea::Error (kConfig) when T_s is not an integer multiple of the
  /// control period or the gravity mode is kExact.
  L1ResonanceRatioController(const PlantParams& params, const L1Config& cfg, GravityCompensation gravity,
                             double control_period);

  void reset(const PlantState& x0);
  ControlOutput step(const PlantState& x, double q_d, double dob_out);

  /// Known inputs handed to the predictor at the last adaptation instant.
  double held_matched() const { return held_matched_; }
  const Vector3& held_unmatched() const { return held_unmatched_; }
  const L1AdaptiveController& adaptive() const { return adaptive_; }
  const NominalModel& model() const { return model_; }
  const RrcGains& gains() const { return gains_; }
  int ratio() const { return ratio_; }

 private:
  PlantParams params_;
  RrcGains gains_;
  NominalModel model_;
  GravityCompensation gravity_;
  L1AdaptiveController adaptive_;
  int ratio_;
  std::int64_t tick_ = 0;
  double u2_ = 0.0;
  double held_matched_ = 0.0;
  Vector3 held_unmatched_ = Vector3::Zero();
};

}  // namespace sea
