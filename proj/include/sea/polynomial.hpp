#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

namespace sea {

using Complex = std::complex<double>;

/// Real polynomial in s, coefficients stored in ascending powers:
/// p(s) = c[0] + c[1] s + ... + c[n] s^n.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) {}
  explicit Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {}

  /// Builds prod (s - r_i); conjugate pairs give real coefficients.
  static Polynomial from_roots(const std::vector<Complex>& roots);
  static Polynomial constant(double c) { return Polynomial{c}; }

  /// Degree ignoring exact trailing zeros; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  double leading() const;
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(int power) const;

  Complex operator()(Complex s) const;
  double operator()(double s) const;

  Polynomial derivative() const;

  /// Drops leading coefficients that are negligible at frequency scale
  /// `scale`: |c_k| scale^k < rel_tol * max_i |c_i| scale^i.
  Polynomial trimmed(double scale, double rel_tol = 1e-9) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double k, const Polynomial& p);

 private:
  std::vector<double> coeffs_;
};

/// Roots via companion-matrix eigenvalues. Clusters of roots that agree to
/// within the attainable accuracy of a multiple root are replaced by their
/// Newton-polished centroid, so exact multiple roots come back coincident.
/// Throws sea::Error (kAnalysis) when the degree is < 1.
std::vector<Complex> polynomial_roots(const Polynomial& p);

/// det(sI - A) by the Faddeev-LeVerrier recursion.
Polynomial characteristic_polynomial(const Eigen::MatrixXd& A);

/// Rational function num(s)/den(s).
struct TransferFunction {
  Polynomial num;
  Polynomial den;

  Complex operator()(Complex s) const { return num(s) / den(s); }
  double dc_gain() const;
  /// deg(den) - deg(num); negative for improper functions.
  int relative_degree() const { return den.degree() - num.degree(); }
  bool is_proper() const { return relative_degree() >= 0; }
  bool is_strictly_proper() const { return relative_degree() > 0; }
  std::vector<Complex> poles() const { return polynomial_roots(den); }

  friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return {a.num * b.num, a.den * b.den};
  }
};

}  // namespace sea
