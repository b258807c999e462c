#pragma once

#include <Eigen/Core>

#include "sea/plant.hpp"
#include "sea/polynomial.hpp"

namespace sea {

/// Resonance-ratio gains. All four closed-loop poles land at -omega.
struct RrcGains {
  double K_p = 0.0;    // position gain K_f / J_a [1/s^2]
  double K_r = 0.0;    // spring-torque feedback 4 / J_a [1/(kg m^2)]
  double K_v = 0.0;    // velocity gain 4 omega [1/s]
  double omega = 0.0;  // sqrt(K_f / J_a) [rad/s]
  /// State feedback u1 = -K x for x = [q, dq, theta, dtheta].
  Eigen::RowVector4d K = Eigen::RowVector4d::Zero();
};

RrcGains build_rrc_gains(const PlantParams& params);

/// Closed-loop nominal model dx/dt = A_m x + B_m (u2 + sigma1) + B_um sigma2,
/// y = c x, with the RRC state feedback folded into A_m.
struct NominalModel {
  Eigen::Matrix4d A_m;
  Eigen::Vector4d B_m;
  Eigen::Matrix<double, 4, 3> B_um;
  Eigen::RowVector4d c;
  double K_g = 0.0;  // -(c A_m^-1 B_m)^-1

  /// [B_m B_um].
  Eigen::Matrix4d input_matrix() const;
  /// H_m(s) = c (sI - A_m)^-1 B_m.
  TransferFunction H_m() const;
  /// H_um,j(s) = c (sI - A_m)^-1 B_um e_j, j in {0, 1, 2}.
  TransferFunction H_um(int j) const;
};

/// Throws sea::Error (kNumeric) when A_m is singular.
NominalModel build_nominal_model(const PlantParams& params, const RrcGains& gains);

/// Open-loop linear plant (gravity, friction and disturbances stripped,
/// motor side reduced to a double integrator by the observer).
Eigen::Matrix4d open_loop_matrix(const PlantParams& params);

}  // namespace sea
