#include "sea/lti_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "sea/error.hpp"

namespace sea {

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A, double t) {
  const Eigen::MatrixXd At = A * t;
  return At.exp();
}

Eigen::MatrixXd zoh_integral(const Eigen::MatrixXd& A, double t) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = A;
  aug.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return matrix_exponential(aug, t).topRightCorner(n, n);
}

Polynomial contact_characteristic_polynomial(double w, double lambda) {
  const double w2 = w * w;
  return Polynomial{w2 * w2 + 5.0 * lambda * w2, 4.0 * w2 * w + 4.0 * w * lambda, 6.0 * w2 + lambda,
                    4.0 * w, 1.0};
}

bool has_conjugate_pair(const std::vector<Complex>& roots) {
  for (const Complex& r : roots) {
    if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r))) return true;
  }
  return false;
}

RootLocusResult root_locus(double omega, const std::vector<double>& lambda_grid) {
  RootLocusResult out;
  out.lambda = lambda_grid;
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0)) throw Error(ErrorCategory::kAnalysis, "root_locus: lambda must be >= 0");
    auto roots = polynomial_roots(contact_characteristic_polynomial(omega, lambda));
    out.has_conjugate_pair.push_back(has_conjugate_pair(roots));
    out.roots.push_back(std::move(roots));
  }
  return out;
}

namespace {

struct PoleSpan {
  double slowest_decay;  // min |Re p|
  double fastest;        // max |p|
};

PoleSpan pole_span(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(A, false);
  PoleSpan span{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    const Complex p = eig.eigenvalues()(i);
    if (!(p.real() < 0.0)) throw Error(ErrorCategory::kAnalysis, "l1_norm: system is not strictly stable");
    span.slowest_decay = std::min(span.slowest_decay, -p.real());
    span.fastest = std::max(span.fastest, std::abs(p));
  }
  return span;
}

}  // namespace

L1NormResult l1_norm(const StateSpace& sys, double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > dt)) throw Error(ErrorCategory::kAnalysis, "l1_norm: bad horizon or step");
  const int p = sys.outputs(), m = sys.inputs();
  Eigen::MatrixXd integral = sys.D.cwiseAbs();
  L1NormResult out;
  out.horizon = horizon;
  out.dt = dt;
  if (sys.states() == 0) {
    out.norm = integral.rowwise().sum().maxCoeff();
    return out;
  }
  const PoleSpan span = pole_span(sys.A);
  if (horizon < 10.0 / span.slowest_decay) {
    throw Error(ErrorCategory::kAnalysis, "l1_norm: horizon shorter than ten slowest time constants");
  }

  const Eigen::MatrixXd step = matrix_exponential(sys.A, dt);
  Eigen::MatrixXd X = sys.B;
  Eigen::MatrixXd prev = (sys.C * X).cwiseAbs();
  const long n_steps = std::lround(std::ceil(horizon / dt));
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, m);
  for (long k = 0; k < n_steps; ++k) {
    X = step * X;
    Eigen::MatrixXd cur = (sys.C * X).cwiseAbs();
    acc += 0.5 * dt * (prev + cur);
    prev = std::move(cur);
  }
  integral += acc;
  out.norm = integral.rowwise().sum().maxCoeff();
  out.tail_estimate = (prev / span.slowest_decay).rowwise().sum().maxCoeff();
  return out;
}

L1NormResult l1_norm(const StateSpace& sys) {
  if (sys.states() == 0) return l1_norm(sys, 1.0, 0.1);
  const PoleSpan span = pole_span(sys.A);
  const double horizon = 30.0 / span.slowest_decay;
  const double dt = std::min(0.02 / span.fastest, horizon / 2000.0);
  return l1_norm(sys, horizon, dt);
}

void StabilityBudget::validate() const {
  if (!(L_1 >= 0.0 && B_1 >= 0.0 && L_2 >= 0.0 && B_2 >= 0.0)) {
    throw Error(ErrorCategory::kConfig, "stability budget: bounds must be non-negative");
  }
  if (L_1 > 0.0 && L_2 == 0.0) {
    throw Error(ErrorCategory::kConfig, "stability budget: l_0 = L_1 / L_2 needs L_2 > 0");
  }
}

double StabilityBudget::l_0() const { return L_1 == 0.0 ? 0.0 : L_1 / L_2; }

double StabilityBudget::B_0() const {
  const double l0 = l_0();
  return l0 == 0.0 ? B_2 : std::max(B_1 / l0, B_2);
}

StabilityBudget envelope_budget(const PlantParams& params, const std::vector<double>& load_masses,
                                double max_contact_stiffness, double contact_position,
                                double max_motor_speed) {
  double worst_mismatch = 0.0;
  for (double m : load_masses) {
    worst_mismatch = std::max(worst_mismatch, std::abs(m - params.m_0) / params.m_0 * params.G_0);
  }
  StabilityBudget b;
  b.L_1 = 0.0;
  b.B_1 = params.f_m * max_motor_speed / params.J_m;
  b.L_2 = max_contact_stiffness / params.J_a;
  b.B_2 = (worst_mismatch + max_contact_stiffness * std::abs(contact_position)) / params.J_a;
  return b;
}

ReferenceSystemNorms reference_system_norms(const NominalModel& model, const L1Config& cfg) {
  StateSpace matched{model.A_m, model.B_m, Eigen::MatrixXd::Identity(4, 4), Eigen::MatrixXd::Zero(4, 1)};
  StateSpace unmatched{model.A_m, model.B_um, Eigen::MatrixXd::Identity(4, 4), Eigen::MatrixXd::Zero(4, 3)};
  const StateSpace complement = realize(filter_complement(cfg));
  const StateSpace lowpass = realize(filter_C(cfg));

  ReferenceSystemNorms n;
  n.G_1 = l1_norm(series(complement, matched)).norm;
  n.G_2 = l1_norm(series(replicate_diagonal(complement, 3), unmatched)).norm;
  n.G_d = l1_norm(series(lowpass, matched)).norm;
  return n;
}

StabilityVerdict check_stability_condition(const NominalModel& model, const L1Config& cfg,
                                           const StabilityBudget& budget, double reference_peak) {
  budget.validate();
  cfg.validate(model);
  StabilityVerdict v;
  v.norms = reference_system_norms(model, cfg);
  v.lhs = v.norms.G_1 * budget.l_0() + v.norms.G_2;

  const double offset = v.norms.G_d * std::abs(reference_peak);
  const double rho_lo = std::max(offset, 1e-6);
  constexpr double kRhoHi = 1e6;
  constexpr int kGrid = 601;
  const double L2 = budget.L_2, B0 = budget.B_0();
  v.margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double rho = rho_lo * std::pow(kRhoHi / rho_lo, static_cast<double>(i) / (kGrid - 1));
    const double denom = L2 * rho + B0;
    const double rhs = denom > 0.0 ? (rho + offset) / denom : std::numeric_limits<double>::infinity();
    const double margin = rhs - v.lhs;
    if (margin > v.margin) {
      v.margin = margin;
      v.best_rho = rho;
    }
    if (margin > 0.0 && !v.certified_rho) v.certified_rho = rho;
  }
  v.satisfied = v.margin > 0.0;
  return v;
}

double analytic_nominal_response(double q_d, double omega, double t) {
  if (t <= 0.0) return 0.0;
  const double x = omega * t;
  return q_d * (1.0 - std::exp(-x) * (1.0 + x + x * x / 2.0 + x * x * x / 6.0));
}

std::vector<double> analytic_nominal_response(double q_d, double omega, const std::vector<double>& t) {
  std::vector<double> out(t.size());
  std::transform(t.begin(), t.end(), out.begin(),
                 [&](double ti) { return analytic_nominal_response(q_d, omega, ti); });
  return out;
}

}  // namespace sea
