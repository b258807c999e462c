#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "sea/error.hpp"
#include "sea/lti_analysis.hpp"

namespace sea {
namespace {

Eigen::MatrixXd taylor_exp(const Eigen::MatrixXd& A, double t, int terms) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * A * (t / k);
    sum += term;
  }
  return sum;
}

// All roots of a0 + a1 s + a2 s^2 + a3 s^3 + s^4 in the open left half
// plane, by the Routh-Hurwitz conditions for a monic quartic.
bool hurwitz_quartic(const Polynomial& p) {
  const double a3 = p.coefficient(3), a2 = p.coefficient(2), a1 = p.coefficient(1), a0 = p.coefficient(0);
  return a3 > 0 && a2 > 0 && a1 > 0 && a0 > 0 && a3 * a2 > a1 && a3 * a2 * a1 > a1 * a1 + a3 * a3 * a0;
}

NominalModel table_model() {
  const PlantParams p;
  return build_nominal_model(p, build_rrc_gains(p));
}

TEST(MatrixExponentialTest, Trivial) {
  EXPECT_TRUE(matrix_exponential(Eigen::MatrixXd::Zero(3, 3), 2.0).isIdentity(0.0));
  Eigen::MatrixXd D = Eigen::Vector3d(-1.0, 0.5, -20.0).asDiagonal();
  const Eigen::MatrixXd E = matrix_exponential(D, 0.3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(E(i, i), std::exp(D(i, i) * 0.3), 1e-15 * std::exp(D(i, i) * 0.3) * 4);
  EXPECT_NEAR(E(0, 1), 0.0, 0.0);
}

TEST(MatrixExponentialTest, MatchesTaylorSeries) {
  const NominalModel m = table_model();
  const Eigen::MatrixXd E = matrix_exponential(m.A_m, 1e-3);
  const Eigen::MatrixXd oracle = taylor_exp(m.A_m, 1e-3, 20);
  EXPECT_LT((E - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ZohIntegralTest, SmallStepLimit) {
  const NominalModel m = table_model();
  const double t = 1e-6;
  const Eigen::MatrixXd phi = zoh_integral(m.A_m, t);
  // phi(t) / t = I + A t / 2 + A^2 t^2 / 6 + ...; with |A_m| ~ 2e3 the
  // first-order term is about 1e-3 here.
  const Eigen::MatrixXd taylor = Eigen::MatrixXd::Identity(4, 4) + m.A_m * (t / 2) + m.A_m * m.A_m * (t * t / 6);
  EXPECT_LT((phi / t - taylor).norm(), 1e-9);
  EXPECT_LT((phi / t - Eigen::MatrixXd::Identity(4, 4)).norm(), m.A_m.norm() * t);
}

TEST(ZohIntegralTest, MatchesClosedForm) {
  const NominalModel m = table_model();
  const double t = 4e-3;
  const Eigen::MatrixXd closed = m.A_m.inverse() * (matrix_exponential(m.A_m, t) - Eigen::MatrixXd::Identity(4, 4));
  EXPECT_LT((zoh_integral(m.A_m, t) - closed).norm(), 1e-14);
  // Singular A: the double integrator gives [[t, t^2/2], [0, t]].
  Eigen::MatrixXd A(2, 2);
  A << 0, 1, 0, 0;
  const Eigen::MatrixXd phi = zoh_integral(A, 0.5);
  EXPECT_NEAR(phi(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(phi(0, 1), 0.125, 1e-15);
  EXPECT_NEAR(phi(1, 0), 0.0, 1e-15);
}

TEST(RootLocusTest, ZeroStiffnessGivesQuadruplePole) {
  const double w = build_rrc_gains(PlantParams{}).omega;
  const RootLocusResult r = root_locus(w, {0.0});
  ASSERT_EQ(r.roots[0].size(), 4u);
  for (const Complex& s : r.roots[0]) EXPECT_LT(std::abs(s + w), 1e-6 * w);
  EXPECT_FALSE(r.has_conjugate_pair[0]);
}

TEST(RootLocusTest, ContactProducesConjugatePairs) {
  const double w = build_rrc_gains(PlantParams{}).omega;
  std::vector<double> grid;
  for (double l = 1e-3; l <= 1e4; l *= 1.5) grid.push_back(l);
  grid.push_back(1000.0);
  const RootLocusResult r = root_locus(w, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_TRUE(r.has_conjugate_pair[i]) << "lambda = " << grid[i];
    const Polynomial q = contact_characteristic_polynomial(w, grid[i]);
    EXPECT_TRUE(hurwitz_quartic(q));
    for (const Complex& s : r.roots[i]) {
      EXPECT_LT(s.real(), 0.0);
      EXPECT_LT(std::abs(q(s)), 1e-8 * std::abs(q.coefficient(0)));
    }
  }
}

TEST(RootLocusTest, ExpandedPolynomialMatchesDefinition) {
  const double w = 19.0, l = 250.0;
  const Polynomial q = contact_characteristic_polynomial(w, l);
  for (double s : {-3.0, 0.0, 11.0}) {
    EXPECT_NEAR(q(s), std::pow(s + w, 4) + l * (s * s + 4 * w * s + 5 * w * w), 1e-7 * std::abs(q(s)));
  }
  EXPECT_THROW(root_locus(w, {-1.0}), Error);
}

StateSpace first_order(double a) {
  return StateSpace{Eigen::MatrixXd::Constant(1, 1, -a), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                    Eigen::MatrixXd::Zero(1, 1)};
}

TEST(L1NormTest, FirstOrder) {
  for (double a : {0.5, 3.0, 40.0}) EXPECT_NEAR(l1_norm(first_order(a)).norm, 1.0 / a, 1e-4 / a);
}

TEST(L1NormTest, SeriesLowPassMatchesDenseQuadrature) {
  const double a = 2.0, b = 30.0;
  StateSpace la = first_order(a), lb = first_order(b);
  la.C *= a;
  lb.C *= b;
  const double norm = l1_norm(series(la, lb)).norm;
  // Oracle: midpoint quadrature of the closed-form impulse response.
  double oracle = 0.0;
  const double h = 1e-5;
  for (double t = 0.5 * h; t < 30.0; t += h) oracle += std::abs(a * b / (b - a) * (std::exp(-a * t) - std::exp(-b * t))) * h;
  EXPECT_NEAR(norm, oracle, 1e-5);
  EXPECT_LE(norm, 1.0 + 1e-9);  // product of the individual norms
}

TEST(L1NormTest, ComplementOfUnitFilterVanishes) {
  // C(s) = 1 leaves nothing for (1 - C): the static gain-zero system.
  const StateSpace zero{Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 1), Eigen::MatrixXd(1, 0), Eigen::MatrixXd::Zero(1, 1)};
  EXPECT_EQ(l1_norm(zero).norm, 0.0);
}

TEST(L1NormTest, RejectsUnstableAndShortHorizon) {
  EXPECT_THROW(l1_norm(first_order(-1.0)), Error);
  EXPECT_THROW(l1_norm(first_order(1.0), 2.0, 1e-3), Error);
}

TEST(StabilityConditionTest, ZeroStiffnessBudgetIsAlwaysSatisfied) {
  const NominalModel m = table_model();
  StabilityBudget b;
  b.B_2 = 5.0;
  b.B_1 = 3.0;
  const StabilityVerdict v = check_stability_condition(m, L1Config{}, b, 1.57);
  EXPECT_TRUE(v.satisfied);
  EXPECT_GT(v.margin, 0.0);
  EXPECT_TRUE(v.certified_rho.has_value());
}

TEST(StabilityConditionTest, NormsGrowWithFilterConstant) {
  const NominalModel m = table_model();
  double prev = 0.0;
  for (double T : {0.005, 0.01, 0.02}) {
    L1Config cfg;
    cfg.T = T;
    const ReferenceSystemNorms n = reference_system_norms(m, cfg);
    EXPECT_GT(n.G_2, prev);
    prev = n.G_2;
    EXPECT_GT(n.G_1, 0.0);
    EXPECT_GT(n.G_d, 0.0);
  }
}

TEST(StabilityConditionTest, SlowFilterViolatesStiffBudget) {
  const NominalModel m = table_model();
  const L1Config fast;
  L1Config slow;
  slow.T = 1.0;
  slow.K_a = 0.1;  // keeps C(s) stable at this T
  // Stiffness budget the default filter certifies with 5% headroom.
  StabilityBudget b;
  b.L_2 = 0.95 / reference_system_norms(m, fast).G_2;
  b.B_2 = 1.0;
  const StabilityVerdict ok = check_stability_condition(m, fast, b, 1.57);
  EXPECT_TRUE(ok.satisfied);
  const StabilityVerdict v = check_stability_condition(m, slow, b, 1.57);
  EXPECT_FALSE(v.satisfied);
  EXPECT_GT(v.lhs, 1.0 / b.L_2);
  EXPECT_LT(v.margin, ok.margin);
}

TEST(StabilityConditionTest, LowGainDefaultIsCertified) {
  const PlantParams p;
  const NominalModel m = table_model();
  L1Config cfg;
  cfg.K_a = 1.0;
  const StabilityBudget b = envelope_budget(p, {0.75, 1.5, 2.25}, 0.0, 0.0, 20.0);
  const StabilityVerdict v = check_stability_condition(m, cfg, b, 1.5707963267948966);
  EXPECT_TRUE(v.satisfied);
  EXPECT_GT(v.margin, 0.0);
}

TEST(StabilityConditionTest, EnvelopeBudget) {
  const PlantParams p;
  const StabilityBudget b = envelope_budget(p, {0.75, 1.5, 2.25}, 0.0, 0.0, 20.0);
  EXPECT_EQ(b.L_1, 0.0);
  EXPECT_EQ(b.L_2, 0.0);
  EXPECT_NEAR(b.B_2, 4.428 / p.J_a, 1e-12);
  EXPECT_NEAR(b.B_1, p.f_m * 20.0 / p.J_m, 1e-12);
  EXPECT_EQ(b.l_0(), 0.0);
  EXPECT_EQ(b.B_0(), b.B_2);
  StabilityBudget bad;
  bad.L_1 = 1.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(AnalyticResponseTest, Limits) {
  EXPECT_EQ(analytic_nominal_response(1.5, 19.0, 0.0), 0.0);
  EXPECT_EQ(analytic_nominal_response(1.5, 19.0, -1.0), 0.0);
  EXPECT_NEAR(analytic_nominal_response(1.5, 19.0, 10.0), 1.5, 1e-12);
}

TEST(AnalyticResponseTest, MatchesStateSpaceSimulation) {
  // Oracle: the nominal model driven by u2 = K_g q_d, propagated exactly.
  const NominalModel m = table_model();
  const double w = build_rrc_gains(PlantParams{}).omega, qd = 1.2, h = 1e-3;
  const Eigen::MatrixXd E = matrix_exponential(m.A_m, h);
  const Eigen::VectorXd g = zoh_integral(m.A_m, h) * m.B_m * (m.K_g * qd);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  for (int k = 1; k <= 1000; ++k) {
    x = E * x + g;
    ASSERT_NEAR(x(0), analytic_nominal_response(qd, w, k * h), 1e-12);
  }
}

}  // namespace
}  // namespace sea
