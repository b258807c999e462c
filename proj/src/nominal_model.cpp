#include "sea/nominal_model.hpp"

#include <cmath>

#include <Eigen/LU>

#include "sea/error.hpp"
#include "sea/state_space.hpp"

namespace sea {

RrcGains build_rrc_gains(const PlantParams& params) {
  params.validate();
  RrcGains g;
  g.omega = std::sqrt(params.K_f / params.J_a);
  g.K_p = params.K_f / params.J_a;
  g.K_r = 4.0 / params.J_a;
  g.K_v = 4.0 * g.omega;
  g.K << -g.K_r * params.K_f, 0.0, g.K_p + g.K_r * params.K_f, g.K_v;
  return g;
}

Eigen::Matrix4d open_loop_matrix(const PlantParams& p) {
  Eigen::Matrix4d A;
  A << 0.0, 1.0, 0.0, 0.0,
       -p.K_f / p.J_a, 0.0, p.K_f / p.J_a, 0.0,
       0.0, 0.0, 0.0, 1.0,
       0.0, 0.0, 0.0, 0.0;
  return A;
}

NominalModel build_nominal_model(const PlantParams& p, const RrcGains& g) {
  NominalModel m;
  const double KrKf = g.K_r * p.K_f;
  m.A_m << 0.0, 1.0, 0.0, 0.0,
           -p.K_f / p.J_a, 0.0, p.K_f / p.J_a, 0.0,
           0.0, 0.0, 0.0, 1.0,
           KrKf, 0.0, -KrKf - g.K_p, -g.K_v;
  m.B_m << 0.0, 0.0, 0.0, 1.0;
  m.B_um.setZero();
  m.B_um.topRows<3>().setIdentity();
  m.c << 1.0, 0.0, 0.0, 0.0;

  const Eigen::FullPivLU<Eigen::Matrix4d> lu(m.A_m);
  if (!lu.isInvertible()) {
    throw Error(ErrorCategory::kNumeric, "build_nominal_model: A_m is singular");
  }
  const double dc = m.c * lu.solve(m.B_m);
  if (dc == 0.0) throw Error(ErrorCategory::kNumeric, "build_nominal_model: zero DC gain");
  m.K_g = -1.0 / dc;
  return m;
}

Eigen::Matrix4d NominalModel::input_matrix() const {
  Eigen::Matrix4d M;
  M << B_m, B_um;
  return M;
}

TransferFunction NominalModel::H_m() const {
  return transfer_from_state_space(A_m, B_m, c);
}

TransferFunction NominalModel::H_um(int j) const {
  return transfer_from_state_space(A_m, B_um.col(j), c);
}

}  // namespace sea
