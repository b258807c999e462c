#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sea/l1_config.hpp"
#include "sea/nominal_model.hpp"
#include "sea/polynomial.hpp"
#include "sea/state_space.hpp"

namespace sea {

/// e^{A t} by scaling and squaring with a Pade approximant.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A, double t);

/// phi(t) = integral_0^t e^{A s} ds, equal to A^-1 (e^{A t} - I) for
/// invertible A. Computed from the exponential of [[A, I], [0, 0]] so it
/// stays accurate for small t and singular A.
Eigen::MatrixXd zoh_integral(const Eigen::MatrixXd& A, double t);

/// Q(s) = s^4 + 4 w s^3 + (6 w^2 + l) s^2 + (4 w^3 + 4 w l) s + (w^4 + 5 l w^2)
/// for l = K_e / J_a.
Polynomial contact_characteristic_polynomial(double omega, double lambda);

struct RootLocusResult {
  std::vector<double> lambda;
  std::vector<std::vector<Complex>> roots;
  std::vector<bool> has_conjugate_pair;
};

RootLocusResult root_locus(double omega, const std::vector<double>& lambda_grid);

/// True when any root has |Im| above a relative threshold.
bool has_conjugate_pair(const std::vector<Complex>& roots);

struct L1NormResult {
  double norm = 0.0;           // max row sum of integral |h_ij(t)| dt (+ |D_ij|)
  double tail_estimate = 0.0;  // truncated mass past the horizon, from the slowest pole
  double horizon = 0.0;
  double dt = 0.0;
};

/// Impulse-response L1 norm by trapezoidal quadrature. Throws sea::Error
/// (kAnalysis) for unstable systems or a horizon shorter than ten slowest
/// time constants.
L1NormResult l1_norm(const StateSpace& sys, double horizon, double dt);
/// Same with horizon and step picked from the pole locations.
L1NormResult l1_norm(const StateSpace& sys);

/// Disturbance bounds ||sigma1|| <= L_1 ||x|| + B_1, ||sigma2|| <= L_2 ||x|| + B_2.
struct StabilityBudget {
  double L_1 = 0.0;
  double B_1 = 0.0;
  double L_2 = 0.0;
  double B_2 = 0.0;

  void validate() const;
  /// L_1 / L_2; zero when L_1 is zero (including L_2 = 0).
  double l_0() const;
  /// max(B_1 / l_0, B_2); the matched offset drops out when l_0 = 0.
  double B_0() const;
};

/// Envelope of the experiments: contact stiffness gives L_2, the worst
/// gravity mismatch plus the wall preload gives B_2, motor friction at
/// `max_motor_speed` gives B_1; L_1 = 0.
StabilityBudget envelope_budget(const PlantParams& params, const std::vector<double>& load_masses,
                                double max_contact_stiffness, double contact_position,
                                double max_motor_speed);

struct ReferenceSystemNorms {
  double G_1 = 0.0;  // (sI - A_m)^-1 B_m (1 - C)
  double G_2 = 0.0;  // (sI - A_m)^-1 B_um (1 - C)
  double G_d = 0.0;  // (sI - A_m)^-1 B_m C
};

ReferenceSystemNorms reference_system_norms(const NominalModel& model, const L1Config& cfg);

struct StabilityVerdict {
  bool satisfied = false;
  double lhs = 0.0;                    // ||G_1|| l_0 + ||G_2||
  double margin = 0.0;                 // max over rho of rhs(rho) - lhs
  double best_rho = 0.0;               // maximizer of the margin on the grid
  std::optional<double> certified_rho; // smallest grid rho with rhs > lhs
  ReferenceSystemNorms norms;
};

/// Evaluates ||G_1|| l_0 + ||G_2|| < (rho + ||G_d|| ||q_d||) / (L_2 rho + B_0)
/// on a logarithmic rho grid over [||G_d|| ||q_d||, 1e6].
StabilityVerdict check_stability_condition(const NominalModel& model, const L1Config& cfg,
                                           const StabilityBudget& budget, double reference_peak);

/// Step response q_d [1 - e^{-w t} (1 + w t + (w t)^2 / 2 + (w t)^3 / 6)];
/// zero for t < 0.
double analytic_nominal_response(double q_d, double omega, double t);
std::vector<double> analytic_nominal_response(double q_d, double omega, const std::vector<double>& t);

}  // namespace sea
