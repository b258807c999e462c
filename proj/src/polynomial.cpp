#include "sea/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sea/error.hpp"

namespace sea {

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> real(c.size());
  std::transform(c.begin(), c.end(), real.begin(), [](Complex z) { return z.real(); });
  return Polynomial(std::move(real));
}

int Polynomial::degree() const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (coeffs_[i] != 0.0) return i;
  }
  return -1;
}

double Polynomial::leading() const {
  const int d = degree();
  return d < 0 ? 0.0 : coeffs_[d];
}

double Polynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[power];
}

Complex Polynomial::operator()(Complex s) const {
  Complex acc = 0.0;
  for (int i = degree(); i >= 0; --i) acc = acc * s + coeffs_[i];
  return acc;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (int i = degree(); i >= 0; --i) acc = acc * s + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  const int d = degree();
  if (d <= 0) return Polynomial{0.0};
  std::vector<double> c(d);
  for (int i = 1; i <= d; ++i) c[i - 1] = i * coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::trimmed(double scale, double rel_tol) const {
  const int d = degree();
  if (d < 0) return Polynomial{0.0};
  double biggest = 0.0;
  for (int i = 0; i <= d; ++i) biggest = std::max(biggest, std::abs(coeffs_[i]) * std::pow(scale, i));
  int top = d;
  while (top > 0 && std::abs(coeffs_[top]) * std::pow(scale, top) < rel_tol * biggest) --top;
  return Polynomial(std::vector<double>(coeffs_.begin(), coeffs_.begin() + top + 1));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{0.0};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(double k, const Polynomial& p) {
  std::vector<double> c = p.coeffs_;
  for (double& v : c) v *= k;
  return Polynomial(std::move(c));
}

namespace {

// Newton iteration on f/f' with a fixed iteration budget; keeps the best
// iterate seen so that a flat region cannot push it away.
Complex polish(const Polynomial& f, Complex z) {
  const Polynomial df = f.derivative();
  Complex best = z;
  double best_residual = std::abs(f(z));
  for (int iter = 0; iter < 8; ++iter) {
    const Complex slope = df(z);
    if (std::abs(slope) == 0.0) break;
    z -= f(z) / slope;
    const double residual = std::abs(f(z));
    if (residual < best_residual) {
      best = z;
      best_residual = residual;
    }
  }
  return best;
}

}  // namespace

std::vector<Complex> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCategory::kAnalysis, "polynomial_roots: degree must be at least 1");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  const double lead = p.coefficient(n);
  for (int i = 0; i < n; ++i) companion(0, i) = -p.coefficient(n - 1 - i) / lead;
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCategory::kAnalysis, "polynomial_roots: eigenvalue iteration failed");
  }
  std::vector<Complex> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = solver.eigenvalues()(i);

  // Single-linkage clusters at a loose tolerance; a cluster of k roots is
  // accepted as one k-fold root only if its spread is consistent with the
  // eps^(1/k) sensitivity of a genuine multiple root.
  constexpr double kLinkTol = 1e-3;
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(raw[i]), std::abs(raw[j]));
      if (std::abs(raw[i] - raw[j]) < kLinkTol * scale) {
        const int from = label[j], to = label[i];
        for (int& l : label) {
          if (l == from) l = to;
        }
      }
    }
  }

  std::vector<Complex> roots;
  roots.reserve(n);
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<int> members;
    for (int j = 0; j < n; ++j) {
      if (label[j] == label[i]) members.push_back(j);
    }
    for (int j : members) done[j] = true;
    const int k = static_cast<int>(members.size());
    if (k == 1) {
      roots.push_back(raw[i]);
      continue;
    }
    Complex centroid = 0.0;
    for (int j : members) centroid += raw[j];
    centroid /= static_cast<double>(k);
    double spread = 0.0;
    for (int j : members) spread = std::max(spread, std::abs(raw[j] - centroid));
    const double allowed = 50.0 * std::pow(eps, 1.0 / k) * (1.0 + std::abs(centroid));
    if (spread > allowed) {
      for (int j : members) roots.push_back(raw[j]);
      continue;
    }
    // The (k-1)-th derivative has a simple root at a k-fold root of p.
    Polynomial dk = p;
    for (int d = 1; d < k; ++d) dk = dk.derivative();
    Complex refined = polish(dk, centroid);
    // A real polynomial's odd-multiplicity cluster sits on the real axis.
    if (std::abs(refined.imag()) <= allowed) refined = Complex(refined.real(), 0.0);
    for (int j = 0; j < k; ++j) roots.push_back(refined);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

Polynomial characteristic_polynomial(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    M = A * M + c[n - k + 1] * I;
    c[n - k] = -(A * M).trace() / k;
  }
  return Polynomial(std::move(c));
}

double TransferFunction::dc_gain() const {
  const double d = den.coefficient(0);
  if (d == 0.0) throw Error(ErrorCategory::kAnalysis, "transfer function has a pole at s = 0");
  return num.coefficient(0) / d;
}

}  // namespace sea
