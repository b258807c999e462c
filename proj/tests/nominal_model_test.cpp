#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <gtest/gtest.h>

#include "sea/error.hpp"
#include "sea/l1_config.hpp"
#include "sea/nominal_model.hpp"

namespace sea {
namespace {

Complex resolvent_gain(const NominalModel& m, const Eigen::Vector4d& b, Complex s) {
  const Eigen::Matrix4cd R = (s * Eigen::Matrix4cd::Identity() - m.A_m.cast<Complex>()).inverse();
  return (m.c.cast<Complex>() * R * b.cast<Complex>())(0, 0);
}

TEST(RrcGainsTest, TableValues) {
  const RrcGains g = build_rrc_gains(PlantParams{});
  EXPECT_LT(std::abs(g.omega - 19.068), 0.01);
  EXPECT_NEAR(g.K_p, 363.70, 0.01);
  EXPECT_NEAR(g.K_r, 11.594, 1e-3);
  EXPECT_NEAR(g.K_v, 76.27, 0.02);
  EXPECT_NEAR(g.K_p, 125.478 / 0.345, 1e-12);
}

TEST(RrcGainsTest, UnitParameters) {
  PlantParams p;
  p.K_f = 1.0;
  p.J_a = 1.0;
  const RrcGains g = build_rrc_gains(p);
  EXPECT_DOUBLE_EQ(g.omega, 1.0);
  EXPECT_DOUBLE_EQ(g.K_p, 1.0);
  EXPECT_DOUBLE_EQ(g.K_r, 4.0);
  EXPECT_DOUBLE_EQ(g.K_v, 4.0);
}

TEST(NominalModelTest, QuadruplePoleAtOmega) {
  const PlantParams p;
  const RrcGains g = build_rrc_gains(p);
  const NominalModel m = build_nominal_model(p, g);
  // det(sI - A_m) = (s + w)^4, compared through the coefficients
  // 4w, 6w^2, 4w^3, w^4.
  const Polynomial chi = characteristic_polynomial(m.A_m);
  const double w = g.omega;
  EXPECT_NEAR(chi.coefficient(3) / (4 * w), 1.0, 1e-12);
  EXPECT_NEAR(chi.coefficient(2) / (6 * w * w), 1.0, 1e-12);
  EXPECT_NEAR(chi.coefficient(1) / (4 * w * w * w), 1.0, 1e-12);
  EXPECT_NEAR(chi.coefficient(0) / std::pow(w, 4), 1.0, 1e-12);
  // A defective eigenvalue is only resolved to about eps^(1/4).
  Eigen::EigenSolver<Eigen::Matrix4d> eig(m.A_m);
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(eig.eigenvalues()(i) + w), 1e-2);
}

TEST(NominalModelTest, StaticGain) {
  const PlantParams p;
  const RrcGains g = build_rrc_gains(p);
  const NominalModel m = build_nominal_model(p, g);
  const double oracle = -1.0 / (m.c * m.A_m.inverse() * m.B_m)(0, 0);
  EXPECT_NEAR(m.K_g, oracle, 1e-9);
  EXPECT_NEAR(m.K_g, 363.70, 0.01);
  EXPECT_NEAR(std::abs(m.input_matrix().determinant()), 1.0, 1e-15);
}

TEST(NominalModelTest, TransferFunctionsMatchResolvent) {
  const PlantParams p;
  const NominalModel m = build_nominal_model(p, build_rrc_gains(p));
  const TransferFunction Hm = m.H_m();
  EXPECT_EQ(Hm.relative_degree(), 4);
  EXPECT_NEAR(Hm.dc_gain(), 1.0 / m.K_g, 1e-15);
  for (int j = 0; j < 3; ++j) {
    const TransferFunction H = m.H_um(j);
    const Eigen::Vector4d b = m.B_um.col(j);
    EXPECT_NEAR(H.dc_gain(), -(m.c * m.A_m.inverse() * b)(0, 0), 1e-12);
    for (Complex s : {Complex(0.0, 1.0), Complex(-3.0, 25.0), Complex(0.0, 400.0)}) {
      const Complex expected = resolvent_gain(m, b, s);
      EXPECT_LT(std::abs(H(s) - expected), 1e-10 * std::abs(expected));
    }
  }
}

TEST(NominalModelTest, UnmatchedNumerators) {
  const PlantParams p;
  const RrcGains g = build_rrc_gains(p);
  const NominalModel m = build_nominal_model(p, g);
  const double k = g.K_r * p.K_f + g.K_p;
  const Polynomial n1 = m.H_um(0).num, n2 = m.H_um(1).num, n3 = m.H_um(2).num;
  EXPECT_NEAR(n1.coefficient(0), 0.0, 1e-9);
  EXPECT_NEAR(n1.coefficient(1), k, 1e-9 * k);
  EXPECT_NEAR(n1.coefficient(2), g.K_v, 1e-9 * g.K_v);
  EXPECT_NEAR(n2.coefficient(0), k, 1e-9 * k);
  EXPECT_NEAR(n3.coefficient(1), g.K_p, 1e-9 * g.K_p);
  EXPECT_NEAR(n3.coefficient(0), g.K_p * g.K_v, 1e-9 * g.K_p * g.K_v);
  EXPECT_NEAR(Hmum_dc_gain(m, 1), 5.0, 1e-9);
}

TEST(NominalModelTest, SingularModelIsRejected) {
  PlantParams p;
  RrcGains g = build_rrc_gains(p);
  g.K_p = 0.0;
  g.K_r = 0.0;
  try {
    build_nominal_model(p, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kNumeric);
  }
}

TEST(L1ConfigTest, DefaultFiltersAreValid) {
  const PlantParams p;
  const NominalModel m = build_nominal_model(p, build_rrc_gains(p));
  for (double T : {0.005, 0.01, 0.02}) {
    L1Config cfg;
    cfg.T = T;
    EXPECT_NO_THROW(cfg.validate(m));
    EXPECT_NEAR(filter_C(cfg).dc_gain(), 1.0, 1e-15);
    EXPECT_TRUE(filter_C_over_Hm(cfg, m).is_proper());
    EXPECT_FALSE(filter_C_over_Hm(cfg, m).is_strictly_proper());
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(filter_C_Hmum(cfg, m, j).is_strictly_proper());
  }
}

TEST(L1ConfigTest, FilterMatchesAnalyticForm) {
  const L1Config cfg;
  const Complex s(0.0, 1.0 / cfg.T);
  const Complex D = 1.0 / (s * std::pow(cfg.T * s + 1.0, 3));
  const Complex expected = cfg.K_a * D / (1.0 + cfg.K_a * D);
  EXPECT_LT(std::abs(filter_C(cfg)(s) - expected), 1e-12 * std::abs(expected));
  EXPECT_LT(std::abs(filter_complement(cfg)(s) - (1.0 - expected)), 1e-12);
}

TEST(L1ConfigTest, RejectsBadSettings) {
  const PlantParams p;
  const NominalModel m = build_nominal_model(p, build_rrc_gains(p));
  L1Config cfg;
  cfg.T = cfg.T_s;
  EXPECT_THROW(cfg.validate(m), Error);
  cfg = L1Config{};
  cfg.K_a = 0.0;
  EXPECT_THROW(cfg.validate(m), Error);
  // s (s + 1)^3 + 10 has roots in the right half plane.
  cfg = L1Config{};
  cfg.T = 1.0;
  EXPECT_THROW(cfg.validate(m), Error);
}

}  // namespace
}  // namespace sea
