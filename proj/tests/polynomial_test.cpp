#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "sea/error.hpp"
#include "sea/polynomial.hpp"
#include "sea/state_space.hpp"

namespace sea {
namespace {

TEST(PolynomialTest, ArithmeticAndEvaluation) {
  const Polynomial a{1.0, 2.0};       // 1 + 2s
  const Polynomial b{-1.0, 0.0, 1.0};  // s^2 - 1
  const Polynomial prod = a * b;
  EXPECT_EQ(prod.degree(), 3);
  for (double s : {-2.0, 0.5, 3.0}) {
    EXPECT_NEAR(prod(s), a(s) * b(s), 1e-12);
    EXPECT_NEAR((a + b)(s), a(s) + b(s), 1e-12);
    EXPECT_NEAR((a - b)(s), a(s) - b(s), 1e-12);
  }
  EXPECT_EQ(prod.derivative().degree(), 2);
  EXPECT_NEAR(prod.derivative()(1.5), 2.0 * (1.5 * 1.5 - 1.0) + (1.0 + 3.0) * 2.0 * 1.5, 1e-12);
}

TEST(PolynomialRootsTest, QuadrupleRoot) {
  const double w = 19.071;
  const Polynomial p = Polynomial::from_roots({-w, -w, -w, -w});
  const auto roots = polynomial_roots(p);
  ASSERT_EQ(roots.size(), 4u);
  for (const Complex& r : roots) EXPECT_LT(std::abs(r + w), 1e-6 * w);
}

TEST(PolynomialRootsTest, ImaginaryPair) {
  const auto roots = polynomial_roots(Polynomial{1.0, 0.0, 1.0});
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(std::abs(roots[0].real()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(roots[0].imag()), 1.0, 1e-12);
  EXPECT_NEAR(roots[0].imag(), -roots[1].imag(), 1e-12);
}

TEST(PolynomialRootsTest, RootsReproducePolynomial) {
  const Polynomial p{6.0, -1.0, 3.5, 2.0, 1.0};
  const Polynomial back = Polynomial::from_roots(polynomial_roots(p));
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(back.coefficient(k), p.coefficient(k), 1e-10);
}

TEST(PolynomialRootsTest, DegenerateInputIsRejected) {
  EXPECT_THROW(polynomial_roots(Polynomial{0.0, 0.0}), Error);
  EXPECT_THROW(polynomial_roots(Polynomial{3.0}), Error);
  // Stored zero leading terms do not count towards the degree.
  const auto roots = polynomial_roots(Polynomial{1.0, 2.0, 0.0});
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0].real(), -0.5, 1e-15);
}

TEST(CharacteristicPolynomialTest, MatchesDeterminant) {
  Eigen::MatrixXd A(3, 3);
  A << 1, 2, 0, -1, 3, 4, 0.5, 0, -2;
  const Polynomial p = characteristic_polynomial(A);
  for (double s : {-1.3, 0.0, 2.2}) {
    const double det = (s * Eigen::MatrixXd::Identity(3, 3) - A).determinant();
    EXPECT_NEAR(p(s), det, 1e-10);
  }
}

TEST(TransferFromStateSpaceTest, FirstOrder) {
  Eigen::MatrixXd A(1, 1);
  A << -1.0;
  const TransferFunction tf = transfer_from_state_space(A, Eigen::VectorXd::Ones(1), Eigen::RowVectorXd::Ones(1));
  EXPECT_NEAR(tf.dc_gain(), 1.0, 1e-14);
  EXPECT_EQ(tf.relative_degree(), 1);
  EXPECT_NEAR(std::abs(tf(Complex(0.0, 1.0)) - 1.0 / Complex(1.0, 1.0)), 0.0, 1e-14);
}

TEST(TransferFromStateSpaceTest, MatchesResolvent) {
  Eigen::MatrixXd A(3, 3);
  A << 0, 1, 0, 0, 0, 1, -6, -11, -6;
  Eigen::VectorXd b(3);
  b << 0.2, -1.0, 1.0;
  Eigen::RowVectorXd c(3);
  c << 1.0, 0.5, 0.0;
  const TransferFunction tf = transfer_from_state_space(A, b, c, 0.3);
  for (Complex s : {Complex(0.0, 0.7), Complex(-0.5, 2.0), Complex(4.0, 0.0)}) {
    const Eigen::MatrixXcd R = (s * Eigen::MatrixXcd::Identity(3, 3) - A.cast<Complex>()).inverse();
    const Complex expected = (c.cast<Complex>() * R * b.cast<Complex>())(0, 0) + 0.3;
    EXPECT_LT(std::abs(tf(s) - expected), 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST(RealizeTest, FrequencyResponseMatchesTransferFunction) {
  // Widely spread poles exercise the frequency scaling.
  const TransferFunction tf{Polynomial{5.0, 1.0} * Polynomial{300.0},
                            Polynomial::from_roots({-1.0, -40.0, Complex(-300.0, 200.0), Complex(-300.0, -200.0)})};
  const StateSpace ss = realize(tf);
  for (double w : {0.1, 3.0, 80.0, 900.0}) {
    const Complex s(0.0, w);
    const Complex expected = tf(s);
    EXPECT_LT(std::abs(ss.frequency_response(s)(0, 0) - expected), 1e-10 * std::abs(expected));
  }
}

TEST(RealizeTest, RejectsImproper) {
  EXPECT_THROW(realize(TransferFunction{Polynomial{0.0, 0.0, 1.0}, Polynomial{1.0, 1.0}}), Error);
}

TEST(BilinearTest, PrewarpIdentity) {
  // Tustin maps s = (2/h) (z - 1) / (z + 1), so H_d(e^{j w h}) = H_c(j (2/h) tan(w h / 2)).
  const double h = 1e-3;
  const TransferFunction tf{Polynomial{10.0},
                            Polynomial{0.0, 1.0} * Polynomial{1.0, 0.01} * Polynomial{1.0, 0.01} *
                                    Polynomial{1.0, 0.01} +
                                Polynomial{10.0}};
  const DiscreteStateSpace d = DiscreteStateSpace::bilinear(realize(tf), h);
  EXPECT_LT(d.spectral_radius(), 1.0);
  for (double w : {1.0, 100.0, 1000.0}) {
    const Complex z = std::exp(Complex(0.0, w * h));
    const Complex expected = tf(Complex(0.0, 2.0 / h * std::tan(w * h / 2.0)));
    EXPECT_LT(std::abs(d.frequency_response(z)(0, 0) - expected), 1e-9 * (1.0 + std::abs(expected)));
  }
}

TEST(BilinearTest, DcGainIsPreservedInSimulation) {
  const TransferFunction tf{Polynomial{4.0}, Polynomial{2.0, 1.0}};
  DiscreteStateSpace d = DiscreteStateSpace::bilinear(realize(tf), 1e-2);
  double y = 0.0;
  for (int k = 0; k < 5000; ++k) y = d.step(1.0);
  EXPECT_NEAR(y, 2.0, 1e-10);
  d.reset();
  EXPECT_EQ(d.state().norm(), 0.0);
}

TEST(BilinearTest, RejectsUnstableContinuousSystem) {
  EXPECT_THROW(DiscreteStateSpace::bilinear(realize(TransferFunction{Polynomial{1.0}, Polynomial{-1.0, 1.0}}), 1e-3),
               Error);
}

}  // namespace
}  // namespace sea
