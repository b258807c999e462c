#include "sea/state_space.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "sea/error.hpp"

namespace sea {

Eigen::MatrixXcd StateSpace::frequency_response(std::complex<double> s) const {
  const int n = states();
  Eigen::MatrixXcd resolvent = s * Eigen::MatrixXcd::Identity(n, n) - A.cast<std::complex<double>>();
  Eigen::MatrixXcd x = resolvent.partialPivLu().solve(B.cast<std::complex<double>>());
  return C.cast<std::complex<double>>() * x + D.cast<std::complex<double>>();
}

StateSpace realize(const TransferFunction& tf) {
  const int n = tf.den.degree();
  if (n < 0) throw Error(ErrorCategory::kConfig, "realize: zero denominator");
  if (!tf.is_proper() && !tf.num.is_zero()) {
    throw Error(ErrorCategory::kConfig, "realize: improper transfer function");
  }
  const double lead = tf.den.leading();
  if (n == 0) {
    StateSpace sys;
    sys.A.resize(0, 0);
    sys.B.resize(0, 1);
    sys.C.resize(1, 0);
    sys.D = Eigen::MatrixXd::Constant(1, 1, tf.num.coefficient(0) / lead);
    return sys;
  }

  double alpha = 0.0;
  if (tf.den.coefficient(0) != 0.0) {
    alpha = std::pow(std::abs(tf.den.coefficient(0) / lead), 1.0 / n);
  } else {
    for (int k = 0; k < n; ++k) {
      alpha = std::max(alpha, std::pow(std::abs(tf.den.coefficient(k) / lead), 1.0 / (n - k)));
    }
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0;

  // Coefficients of num(alpha s~) and den(alpha s~), monic in s~.
  const double scale_lead = lead * std::pow(alpha, n);
  std::vector<double> a(n + 1), b(n + 1);
  for (int k = 0; k <= n; ++k) {
    a[k] = tf.den.coefficient(k) * std::pow(alpha, k) / scale_lead;
    b[k] = tf.num.coefficient(k) * std::pow(alpha, k) / scale_lead;
  }
  const double feedthrough = b[n];
  for (int k = 0; k < n; ++k) b[k] -= feedthrough * a[k];

  StateSpace sys;
  sys.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) sys.A(i, i + 1) = 1.0;
  for (int k = 0; k < n; ++k) sys.A(n - 1, k) = -a[k];
  sys.B = Eigen::MatrixXd::Zero(n, 1);
  sys.B(n - 1, 0) = 1.0;
  sys.C = Eigen::MatrixXd::Zero(1, n);
  for (int k = 0; k < n; ++k) sys.C(0, k) = b[k];
  sys.D = Eigen::MatrixXd::Constant(1, 1, feedthrough);

  sys.A *= alpha;
  sys.B *= alpha;
  return sys;
}

StateSpace series(const StateSpace& first, const StateSpace& second) {
  if (first.outputs() != second.inputs()) {
    throw Error(ErrorCategory::kConfig, "series: dimension mismatch");
  }
  const int n1 = first.states(), n2 = second.states();
  StateSpace sys;
  sys.A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  sys.A.topLeftCorner(n1, n1) = first.A;
  sys.A.bottomLeftCorner(n2, n1) = second.B * first.C;
  sys.A.bottomRightCorner(n2, n2) = second.A;
  sys.B.resize(n1 + n2, first.inputs());
  sys.B << first.B, second.B * first.D;
  sys.C.resize(second.outputs(), n1 + n2);
  sys.C << second.D * first.C, second.C;
  sys.D = second.D * first.D;
  return sys;
}

StateSpace parallel(const StateSpace& a, const StateSpace& b) {
  if (a.inputs() != b.inputs() || a.outputs() != b.outputs()) {
    throw Error(ErrorCategory::kConfig, "parallel: dimension mismatch");
  }
  const int na = a.states(), nb = b.states();
  StateSpace sys;
  sys.A = Eigen::MatrixXd::Zero(na + nb, na + nb);
  sys.A.topLeftCorner(na, na) = a.A;
  sys.A.bottomRightCorner(nb, nb) = b.A;
  sys.B.resize(na + nb, a.inputs());
  sys.B << a.B, b.B;
  sys.C.resize(a.outputs(), na + nb);
  sys.C << a.C, b.C;
  sys.D = a.D + b.D;
  return sys;
}

StateSpace replicate_diagonal(const StateSpace& siso, int count) {
  const int n = siso.states();
  StateSpace sys;
  sys.A = Eigen::MatrixXd::Zero(n * count, n * count);
  sys.B = Eigen::MatrixXd::Zero(n * count, count);
  sys.C = Eigen::MatrixXd::Zero(count, n * count);
  sys.D = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    sys.A.block(i * n, i * n, n, n) = siso.A;
    sys.B.block(i * n, i, n, 1) = siso.B;
    sys.C.block(i, i * n, 1, n) = siso.C;
    sys.D(i, i) = siso.D(0, 0);
  }
  return sys;
}

TransferFunction transfer_from_state_space(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                           const Eigen::RowVectorXd& c, double d) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || b.size() != n || c.size() != n) {
    throw Error(ErrorCategory::kConfig, "transfer_from_state_space: dimension mismatch");
  }
  // adj(sI - A) = sum_k M_k s^(n-k), with M_k from the same recursion that
  // yields the characteristic polynomial.
  std::vector<double> den(n + 1, 0.0), num(n + 1, 0.0);
  den[n] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    M = A * M + den[n - k + 1] * I;
    num[n - k] = c * M * b;
    den[n - k] = -(A * M).trace() / k;
  }
  for (int k = 0; k <= n; ++k) num[k] += d * den[k];

  double scale = 1.0;
  if (n > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A, false);
    scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  }
  return {Polynomial(std::move(num)).trimmed(scale), Polynomial(std::move(den))};
}

DiscreteStateSpace::DiscreteStateSpace(Eigen::MatrixXd Ad, Eigen::MatrixXd Bd, Eigen::MatrixXd Cd,
                                       Eigen::MatrixXd Dd)
    : Ad_(std::move(Ad)), Bd_(std::move(Bd)), Cd_(std::move(Cd)), Dd_(std::move(Dd)) {
  x_ = Eigen::VectorXd::Zero(Ad_.rows());
}

DiscreteStateSpace DiscreteStateSpace::bilinear(const StateSpace& sys, double h) {
  if (!(h > 0.0)) throw Error(ErrorCategory::kConfig, "bilinear: period must be positive");
  const int n = sys.states();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::PartialPivLU<Eigen::MatrixXd> ima((I - 0.5 * h * sys.A).eval());
  Eigen::MatrixXd Ad = ima.solve(I + 0.5 * h * sys.A);
  Eigen::MatrixXd Bd = ima.solve(h * sys.B);
  Eigen::MatrixXd Cd = sys.C * ima.inverse();
  Eigen::MatrixXd Dd = sys.D + 0.5 * sys.C * Bd;
  DiscreteStateSpace out(std::move(Ad), std::move(Bd), std::move(Cd), std::move(Dd));
  if (n > 0 && !(out.spectral_radius() < 1.0)) {
    throw Error(ErrorCategory::kNumeric, "bilinear: discrete realization is not strictly stable");
  }
  return out;
}

Eigen::VectorXd DiscreteStateSpace::step(const Eigen::VectorXd& u) {
  Eigen::VectorXd y = Dd_ * u;
  if (x_.size() > 0) {
    y += Cd_ * x_;
    x_ = Ad_ * x_ + Bd_ * u;
  }
  return y;
}

double DiscreteStateSpace::step(double u) {
  Eigen::VectorXd in(1);
  in(0) = u;
  return step(in)(0);
}

double DiscreteStateSpace::spectral_radius() const {
  if (Ad_.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(Ad_, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd DiscreteStateSpace::frequency_response(std::complex<double> z) const {
  const int n = static_cast<int>(Ad_.rows());
  Eigen::MatrixXcd resolvent = z * Eigen::MatrixXcd::Identity(n, n) - Ad_.cast<std::complex<double>>();
  Eigen::MatrixXcd x = resolvent.partialPivLu().solve(Bd_.cast<std::complex<double>>());
  return Cd_.cast<std::complex<double>>() * x + Dd_.cast<std::complex<double>>();
}

}  // namespace sea
