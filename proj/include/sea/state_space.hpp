#pragma once

#include <complex>

#include <Eigen/Core>

#include "sea/polynomial.hpp"

namespace sea {

/// Continuous-time LTI system dx/dt = A x + B u, y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  int states() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(B.cols()); }
  int outputs() const { return static_cast<int>(C.rows()); }

  /// C (sI - A)^-1 B + D.
  Eigen::MatrixXcd frequency_response(std::complex<double> s) const;
};

/// Controllable-canonical realization of a proper SISO transfer function.
/// The companion form is built in normalized frequency s / alpha (alpha is
/// the geometric mean pole magnitude) and mapped back, which keeps the
/// matrix entries of order alpha instead of alpha^n.
/// Throws sea::Error (kConfig) for improper or zero-denominator input.
StateSpace realize(const TransferFunction& tf);

/// y = second(first(u)).
StateSpace series(const StateSpace& first, const StateSpace& second);
/// y = a(u) + b(u).
StateSpace parallel(const StateSpace& a, const StateSpace& b);
/// `count` decoupled copies of a SISO system, one per channel.
StateSpace replicate_diagonal(const StateSpace& siso, int count);

/// SISO c (sI - A)^-1 b + d as a polynomial ratio. The numerator is formed
/// from the Faddeev-LeVerrier adjugate and trimmed of round-off leading terms.
TransferFunction transfer_from_state_space(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                           const Eigen::RowVectorXd& c, double d = 0.0);

/// Discrete-time system x[k+1] = Ad x[k] + Bd u[k], y[k] = Cd x[k] + Dd u[k]
/// with its own state.
class DiscreteStateSpace {
 public:
  DiscreteStateSpace() = default;
  DiscreteStateSpace(Eigen::MatrixXd Ad, Eigen::MatrixXd Bd, Eigen::MatrixXd Cd, Eigen::MatrixXd Dd);

  /// Bilinear (Tustin) transform at period h. Throws sea::Error (kNumeric)
  /// when a discrete pole is not strictly inside the unit circle.
  static DiscreteStateSpace bilinear(const StateSpace& sys, double h);

  /// Output for input u at the current sample, then advance the state.
  Eigen::VectorXd step(const Eigen::VectorXd& u);
  double step(double u);

  void reset() { x_.setZero(); }
  const Eigen::VectorXd& state() const { return x_; }
  double spectral_radius() const;

  const Eigen::MatrixXd& Ad() const { return Ad_; }
  const Eigen::MatrixXd& Bd() const { return Bd_; }
  const Eigen::MatrixXd& Cd() const { return Cd_; }
  const Eigen::MatrixXd& Dd() const { return Dd_; }

  /// Cd (zI - Ad)^-1 Bd + Dd.
  Eigen::MatrixXcd frequency_response(std::complex<double> z) const;

 private:
  Eigen::MatrixXd Ad_, Bd_, Cd_, Dd_;
  Eigen::VectorXd x_;
};

}  // namespace sea
