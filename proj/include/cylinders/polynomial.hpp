#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace cylinders {

using Complex = std::complex<double>;

/// Dense univariate polynomial, coefficient k multiplies x^k.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) {}
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) {}
  static Polynomial constant(T a) { return Polynomial(std::vector<T>{a}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0); }

  template <class U>
  auto operator()(const U& x) const {
    using R = decltype(T() * U());
    R acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(T(double(k)) * c_[k]);
    return Polynomial(d);
  }

  double max_abs() const {
    double m = 0;
    for (const auto& a : c_) m = std::max(m, std::abs(a));
    return m;
  }

  /// Drops leading coefficients below `rel` times the largest one.
  Polynomial trimmed(double rel = 0) const {
    const double cut = rel * max_abs();
    std::vector<T> c = c_;
    while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
    return Polynomial(c);
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(c);
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x = -x;
    return Polynomial(c);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(c);
  }
  friend Polynomial operator*(T s, const Polynomial& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x *= s;
    return Polynomial(c);
  }

 private:
  std::vector<T> c_;
};

/// Roots as eigenvalues of the companion matrix, each polished by a few
/// Newton steps on the polynomial itself.
template <class T>
std::vector<Complex> polynomial_roots(const Polynomial<T>& p_in, double trim_rel = 1e-14) {
  const Polynomial<T> p = p_in.trimmed(trim_rel);
  const int d = p.degree();
  if (d < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  const Complex lead = Complex(p[d]);
  for (int k = 0; k < d; ++k) comp(0, d - 1 - k) = -Complex(p[k]) / lead;
  for (int k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  const Polynomial<T> dp = p.derivative();
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex fz = p(z), dz = dp(z);
      if (std::abs(dz) == 0) break;
      const Complex next = z - fz / dz;
      if (!(std::abs(p(next)) < std::abs(fz))) break;
      z = next;
    }
  }
  return roots;
}

/// Polynomial in (x, y): coefficient (i, j) multiplies x^i y^j.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  BivariatePolynomial(int dx, int dy) : c_(Eigen::MatrixXd::Zero(dx + 1, dy + 1)) {}

  double& at(int i, int j) { return c_(i, j); }
  double at(int i, int j) const {
    return i < c_.rows() && j < c_.cols() ? c_(i, j) : 0.0;
  }
  int degree_x() const { return static_cast<int>(c_.rows()) - 1; }
  int degree_y() const { return static_cast<int>(c_.cols()) - 1; }

  Complex operator()(Complex x, Complex y) const {
    Complex acc = 0, xp = 1;
    for (int i = 0; i < c_.rows(); ++i, xp *= x) {
      Complex yp = 1;
      for (int j = 0; j < c_.cols(); ++j, yp *= y) acc += c_(i, j) * xp * yp;
    }
    return acc;
  }
  Complex dx(Complex x, Complex y) const {
    Complex acc = 0, xp = 1;
    for (int i = 1; i < c_.rows(); ++i, xp *= x) {
      Complex yp = 1;
      for (int j = 0; j < c_.cols(); ++j, yp *= y) acc += double(i) * c_(i, j) * xp * yp;
    }
    return acc;
  }
  Complex dy(Complex x, Complex y) const {
    Complex acc = 0, xp = 1;
    for (int i = 0; i < c_.rows(); ++i, xp *= x) {
      Complex yp = 1;
      for (int j = 1; j < c_.cols(); ++j, yp *= y) acc += double(j) * c_(i, j) * xp * yp;
    }
    return acc;
  }

  /// Coefficient of x^i as a polynomial in y.
  Polynomial<double> coefficient_in_x(int i) const {
    std::vector<double> c;
    for (int j = 0; j < c_.cols(); ++j) c.push_back(at(i, j));
    return Polynomial<double>(c);
  }

  /// Restriction y = y0, as a polynomial in x.
  Polynomial<Complex> at_y(Complex y0) const {
    std::vector<Complex> c;
    for (int i = 0; i < c_.rows(); ++i) c.push_back(coefficient_in_x(i)(y0));
    return Polynomial<Complex>(c);
  }

  double max_abs() const { return c_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd c_;
};

namespace detail {

template <class T>
Polynomial<T> poly_determinant(const std::vector<std::vector<Polynomial<T>>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial<T> acc;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].coeffs().empty()) continue;
    std::vector<std::vector<Polynomial<T>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial<T>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    const Polynomial<T> term = m[0][col] * poly_determinant(minor);
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

/// Resultant of p and q with respect to x, as a polynomial in y, from the
/// Sylvester matrix (cofactor expansion over polynomial entries).
inline Polynomial<double> sylvester_resultant(const BivariatePolynomial& p,
                                              const BivariatePolynomial& q) {
  auto effective_degree = [](const BivariatePolynomial& f) {
    int d = f.degree_x();
    while (d > 0 && f.coefficient_in_x(d).trimmed().coeffs().empty()) --d;
    return d;
  };
  const int dp = effective_degree(p), dq = effective_degree(q);
  const int size = dp + dq;
  if (size == 0) return Polynomial<double>::constant(1.0);
  std::vector<std::vector<Polynomial<double>>> s(size, std::vector<Polynomial<double>>(size));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) s[r][r + dp - k] = p.coefficient_in_x(k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) s[dq + r][r + dq - k] = q.coefficient_in_x(k);
  return detail::poly_determinant(s);
}

struct BivariateRoot {
  Complex x, y;
  double residual = 0;
};

struct BivariateSolution {
  std::vector<BivariateRoot> roots;
  bool positive_dimensional = false;  // resultant vanished identically
};

/// Isolated common zeros of p and q: resultant in x, companion-matrix roots
/// in y, back-substitution, then complex Newton on the 2x2 system.
inline BivariateSolution solve_bivariate(const BivariatePolynomial& p,
                                         const BivariatePolynomial& q, double accept = 1e-9,
                                         double dedup_tol = 1e-8) {
  BivariateSolution out;
  const Polynomial<double> res = sylvester_resultant(p, q);
  double scale = 1;
  for (int i = 0; i <= p.degree_x(); ++i) scale = std::max(scale, p.coefficient_in_x(i).max_abs());
  for (int i = 0; i <= q.degree_x(); ++i) scale = std::max(scale, q.coefficient_in_x(i).max_abs());
  const int size = p.degree_x() + q.degree_x();
  if (res.max_abs() <= 1e-12 * std::pow(scale, size)) {
    out.positive_dimensional = true;
    return out;
  }
  const double pscale = std::max(1.0, p.max_abs()), qscale = std::max(1.0, q.max_abs());
  auto residual = [&](Complex x, Complex y) {
    return std::max(std::abs(p(x, y)) / pscale, std::abs(q(x, y)) / qscale);
  };
  for (const Complex y0 : polynomial_roots(res, 1e-12)) {
    std::vector<Complex> xs;
    for (const auto* f : {&p, &q}) {
      const auto fx = f->at_y(y0).trimmed(1e-12);
      for (const Complex x : polynomial_roots(fx, 1e-12)) xs.push_back(x);
    }
    for (Complex x : xs) {
      Complex y = y0;
      if (residual(x, y) > 1e-4) continue;
      for (int it = 0; it < 30; ++it) {
        const Complex f1 = p(x, y), f2 = q(x, y);
        const Complex a = p.dx(x, y), b = p.dy(x, y), c = q.dx(x, y), d = q.dy(x, y);
        const Complex det = a * d - b * c;
        if (std::abs(det) == 0) break;
        const Complex sx = (d * f1 - b * f2) / det, sy = (a * f2 - c * f1) / det;
        x -= sx;
        y -= sy;
        if (std::abs(sx) + std::abs(sy) < 1e-15 * (1 + std::abs(x) + std::abs(y))) break;
      }
      const double r = residual(x, y);
      if (!(r < accept)) continue;
      bool dup = false;
      for (const auto& e : out.roots)
        if (std::abs(e.x - x) < dedup_tol && std::abs(e.y - y) < dedup_tol) dup = true;
      if (!dup) out.roots.push_back({x, y, r});
    }
  }
  return out;
}

}  // namespace cylinders
