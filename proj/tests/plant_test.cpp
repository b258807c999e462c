#include <cmath>

#include <gtest/gtest.h>

#include "sea/error.hpp"
#include "sea/plant.hpp"

namespace sea {
namespace {

constexpr double kPi = 3.14159265358979323846;

TEST(GravityTorqueTest, TableValues) {
  const PlantParams p;
  EXPECT_NEAR(gravity_torque(p, kPi / 2, 1.5), 8.856, 1e-12);
  EXPECT_EQ(gravity_torque(p, 0.0, 1.5), 0.0);
  EXPECT_NEAR(gravity_torque(p, kPi / 2, 0.75), 4.428, 1e-12);
}

TEST(GravityTorqueTest, DerivativesMatchFiniteDifferences) {
  const PlantParams p;
  const double h = 1e-5;
  for (double q : {-1.0, 0.3, 1.2, 2.9}) {
    const double fd1 = (gravity_torque(p, q + h, 2.0) - gravity_torque(p, q - h, 2.0)) / (2 * h);
    const double fd2 = (gravity_torque_slope(p, q + h, 2.0) - gravity_torque_slope(p, q - h, 2.0)) / (2 * h);
    EXPECT_NEAR(gravity_torque_slope(p, q, 2.0), fd1, 1e-8);
    EXPECT_NEAR(gravity_torque_curvature(p, q, 2.0), fd2, 1e-8);
  }
}

TEST(DisturbanceTorqueTest, Examples) {
  PlantParams p;
  EnvironmentModel env;
  for (double q : {-2.0, 0.0, 0.7, 3.0}) EXPECT_EQ(disturbance_torque(env, p, q), 0.0);

  p.m = 2.25;
  EXPECT_NEAR(disturbance_torque(env, p, kPi / 2), 4.428, 1e-12);

  p.m = p.m_0;
  env = EnvironmentModel{500.0, 1.0, false};
  EXPECT_NEAR(disturbance_torque(env, p, 1.1), 50.0, 1e-9);
  EXPECT_EQ(disturbance_torque(env, p, 0.9), 0.0);
  env.bilateral = true;
  EXPECT_NEAR(disturbance_torque(env, p, 0.9), -50.0, 1e-9);
}

TEST(PlantRhsTest, OriginIsEquilibrium) {
  const PlantParams p;
  const PlantState d = plant_rhs(PlantState{}, 0.0, p, EnvironmentModel{});
  EXPECT_EQ(d.q, 0.0);
  EXPECT_EQ(d.dq, 0.0);
  EXPECT_EQ(d.theta, 0.0);
  EXPECT_EQ(d.dtheta, 0.0);
}

TEST(PlantRhsTest, SpringDeflectionAccelerations) {
  PlantParams p;
  p.G_0 = 0.0;  // gravity off
  p.f_m = 0.0;
  const PlantState d = plant_rhs(PlantState{0.0, 0.0, 0.1, 0.0}, 0.0, p, EnvironmentModel{});
  EXPECT_NEAR(d.dq, 125.478 * 0.1 / 0.345, 1e-12);
  EXPECT_NEAR(d.dq, 36.37, 5e-3);
  EXPECT_NEAR(d.dtheta, -125.478 * 0.1 / 0.294, 1e-12);
  EXPECT_NEAR(d.dtheta, -42.68, 5e-3);
}

TEST(PlantRhsTest, StaticDeflectionBalancesGravity) {
  const PlantParams p;
  for (double q : {0.4, kPi / 2, 2.5}) {
    const PlantState x{q, 0.0, q + gravity_torque(p, q, p.m_0) / p.K_f, 0.0};
    EXPECT_NEAR(plant_rhs(x, 0.0, p, EnvironmentModel{}).dq, 0.0, 1e-12);
  }
}

TEST(IntegrateStepTest, EquilibriumIsHeld) {
  const PlantParams p;
  const double q = 1.0;
  const double spring = gravity_torque(p, q, p.m_0);
  const PlantState x{q, 0.0, q + spring / p.K_f, 0.0};
  const PlantState y = integrate_step(x, spring, 1e-3, p, EnvironmentModel{});
  EXPECT_NEAR(y.q, x.q, 1e-12);
  EXPECT_NEAR(y.dq, 0.0, 1e-12);
  EXPECT_NEAR(y.theta, x.theta, 1e-12);
  EXPECT_NEAR(y.dtheta, 0.0, 1e-12);
}

TEST(IntegrateStepTest, FreeOscillationConservesEnergy) {
  PlantParams p;
  p.G_0 = 0.0;
  p.f_m = 0.0;
  PlantState x{0.0, 0.3, 0.1, -0.2};
  for (int k = 0; k < 1000; ++k) {
    const double e0 = mechanical_energy(x, p);
    x = integrate_step(x, 0.0, 1e-3, p, EnvironmentModel{});
    EXPECT_LT(std::abs(mechanical_energy(x, p) - e0) / e0, 1e-6);
  }
}

TEST(IntegrateStepTest, StepHalvingAgrees) {
  PlantParams p;
  p.m = 2.25;
  const EnvironmentModel env{500.0, 2.0, false};
  const PlantState x{0.8, 1.5, 0.9, -2.0};
  const PlantState one = integrate_step(x, 3.0, 1e-3, p, env);
  const PlantState two = integrate_step(integrate_step(x, 3.0, 5e-4, p, env), 3.0, 5e-4, p, env);
  EXPECT_LT((one.as_vector() - two.as_vector()).norm(), 1e-9);
}

TEST(IntegrateStepTest, RejectsBadInput) {
  const PlantParams p;
  EXPECT_THROW(integrate_step(PlantState{}, 0.0, 0.0, p, EnvironmentModel{}), Error);
  try {
    integrate_step(PlantState{}, std::nan(""), 1e-3, p, EnvironmentModel{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kNumeric);
  }
}

TEST(PlantParamsTest, ValidateRejectsNonPositive) {
  PlantParams p;
  EXPECT_NO_THROW(p.validate());
  p.K_f = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = PlantParams{};
  p.m = -1.0;
  EXPECT_THROW(p.validate(), Error);
}

}  // namespace
}  // namespace sea
