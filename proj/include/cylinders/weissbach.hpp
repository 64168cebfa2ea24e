#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cylinders/combinatorics.hpp"
#include "cylinders/error.hpp"
#include "cylinders/polynomial.hpp"
#include "cylinders/regular_simplex.hpp"

namespace cylinders {

// Lagrange system of min Σu⁴ s.t. Σu² = 1, Σu = 0:
//   4u_i³ + 2λ1 u_i + λ2 = 0,  Σu_i² = 1,  Σu_i = 0.
// Every u_i is a root of the same depressed cubic 4t³ + 2λ1 t + λ2, so
// components take values among a, b, c = −a − b, with
//   λ1 = −2(a² + ab + b²),  λ2 = −4abc.

struct WeissbachSolution {
  std::vector<Complex> values;  // distinct component values
  std::vector<int> multiplicity;
  Complex lambda1, lambda2;
  double residual = 0;
  bool real = false;
  bool lambda2_zero = false;
  bool on_family = false;  // lies on the positive-dimensional component (n + 1 = 3k)
  std::uint64_t count = 0;  // distinct full vectors (orbit size under permutations)

  Eigen::VectorXcd vector() const {
    int total = 0;
    for (int m : multiplicity) total += m;
    Eigen::VectorXcd v(total);
    int k = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (int j = 0; j < multiplicity[i]; ++j) v[k++] = values[i];
    return v;
  }
};

struct WeissbachShape {
  int k = 0, l = 0, m = 0;  // sizes of the blocks taking a, b, c
  int solutions = 0;
  bool positive_dimensional = false;  // k = l = m: the linear condition vanishes
};

struct WeissbachCensus {
  int n = 0;
  std::vector<WeissbachSolution> orbits;
  std::vector<WeissbachShape> shapes;
  std::uint64_t total = 0;
  std::uint64_t lambda2_zero = 0;
  std::uint64_t lambda2_nonzero = 0;
  std::uint64_t complex_count = 0;
  std::uint64_t on_family = 0;  // counted points that are not isolated
  bool positive_dimensional = false;  // a one-parameter family exists besides the counted points
};

/// Max-norm residual of the Lagrange system at (u, λ1, λ2).
template <class Derived>
double weissbach_residual(const Eigen::MatrixBase<Derived>& u, Complex l1, Complex l2) {
  double r = 0;
  Complex s1 = 0, s2 = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Complex x = u[i];
    r = std::max(r, std::abs(4.0 * x * x * x + 2.0 * l1 * x + l2));
    s1 += x;
    s2 += x * x;
  }
  return std::max({r, std::abs(s1), std::abs(s2 - 1.0)});
}

inline std::uint64_t lambda2_zero_census(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "census needs n >= 2");
  std::uint64_t out = 0;
  for (int h = 1; 2 * h <= n + 1; ++h) out += binomial(n + 1, 2 * h) * binomial(2 * h, h);
  return out;
}

inline WeissbachCensus enumerate_weissbach(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "census needs n >= 2");
  if (n > kMaxRegularDim)
    throw Error(ErrorKind::dimension_too_large,
                "census supports n <= " + std::to_string(kMaxRegularDim));
  constexpr double kTol = 1e-8;
  const int total = n + 1;
  WeissbachCensus out;
  out.n = n;

  auto add = [&](Complex a, Complex b, int k, int l, int m, WeissbachShape& shape) {
    const Complex c = -a - b;
    std::vector<Complex> values{a, b, c};
    std::vector<int> mult{k, l, m};
    detail::merge_values(values, mult, 1e-6);
    WeissbachSolution s;
    s.values = values;
    s.multiplicity = mult;
    s.lambda1 = -2.0 * (a * a + a * b + b * b);
    s.lambda2 = -4.0 * a * b * c;
    s.residual = weissbach_residual(s.vector(), s.lambda1, s.lambda2);
    if (!(s.residual < 1e-10)) return;
    ++shape.solutions;
    for (const auto& e : out.orbits)
      if (detail::same_orbit(e.values, e.multiplicity, values, mult, kTol)) return;
    s.real = std::abs(s.lambda1.imag()) < kTol && std::abs(s.lambda2.imag()) < kTol;
    for (auto& x : s.values) {
      if (std::abs(x.imag()) < kTol) x = Complex(x.real(), 0.0);
      else s.real = false;
    }
    s.lambda2_zero = std::abs(s.lambda2) < 1e-10;
    if (s.lambda2_zero) s.lambda2 = 0;
    s.count = detail::orbit_size(s.multiplicity);
    // Points of the family (a, b, c each repeated (n+1)/3 times) are exactly
    // those whose multiplicities are all divisible by (n+1)/3.
    if (total % 3 == 0) {
      s.on_family = true;
      for (int mm : s.multiplicity) s.on_family = s.on_family && mm % (total / 3) == 0;
    }
    out.orbits.push_back(s);
  };

  for (int k = 0; k <= total; ++k)
    for (int l = 0; k + l <= total; ++l) {
      const int m = total - k - l;
      WeissbachShape shape{k, l, m};
      if (k == l && l == m) {
        // (k−m)a + (l−m)b vanishes identically: a curve of solutions.
        // Only its points with a root equal to zero (λ2 = 0) are isolated
        // members of the λ2 = 0 family and are added here.
        shape.positive_dimensional = true;
        out.positive_dimensional = true;
        const double a = 1.0 / std::sqrt(2.0 * k);
        for (double sgn : {1.0, -1.0}) {
          add(sgn * a, -sgn * a, k, l, m, shape);  // c = 0
          add(0.0, sgn * a, k, l, m, shape);       // a = 0
          add(sgn * a, 0.0, k, l, m, shape);       // b = 0
        }
        out.shapes.push_back(shape);
        continue;
      }
      // Unknowns (x, y) = (a, b).
      BivariatePolynomial lin(1, 1), quad(2, 2);
      lin.at(1, 0) = k - m;
      lin.at(0, 1) = l - m;
      quad.at(2, 0) = k + m;
      quad.at(1, 1) = 2.0 * m;
      quad.at(0, 2) = l + m;
      quad.at(0, 0) = -1;
      const auto sol = solve_bivariate(lin, quad);
      shape.positive_dimensional = sol.positive_dimensional;
      for (const auto& r : sol.roots) add(r.x, r.y, k, l, m, shape);
      out.shapes.push_back(shape);
    }

  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const WeissbachSolution& a, const WeissbachSolution& b) {
              if (a.lambda2_zero != b.lambda2_zero) return a.lambda2_zero;
              if (a.lambda2.real() != b.lambda2.real()) return a.lambda2.real() < b.lambda2.real();
              return a.lambda1.real() < b.lambda1.real();
            });
  for (const auto& s : out.orbits) {
    out.total += s.count;
    (s.lambda2_zero ? out.lambda2_zero : out.lambda2_nonzero) += s.count;
    if (!s.real) out.complex_count += s.count;
    if (s.on_family) out.on_family += s.count;
  }
  return out;
}

struct TupleCheck {
  std::string label;
  Eigen::VectorXd u;
  double lambda1 = 0, lambda2 = 0;
  double residual = 0;  // max over all permutations of u
  int permutations = 0;
};

/// Substitutes the explicitly known λ2 ≠ 0 solutions (and all their
/// distinct permutations) into the Lagrange system.
inline std::vector<TupleCheck> verify_explicit_tuples(int n) {
  std::vector<TupleCheck> checks;
  auto make = [&](std::string label, std::vector<double> u, double scale, double l1, double l2) {
    TupleCheck t;
    t.label = std::move(label);
    t.u = Eigen::Map<Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size())) / scale;
    t.lambda1 = l1;
    t.lambda2 = l2;
    std::vector<double> perm(t.u.data(), t.u.data() + t.u.size());
    std::sort(perm.begin(), perm.end());
    do {
      const Eigen::Map<Eigen::VectorXd> p(perm.data(), static_cast<Eigen::Index>(perm.size()));
      t.residual = std::max(t.residual, weissbach_residual(p.cast<Complex>(), l1, l2));
      ++t.permutations;
    } while (std::next_permutation(perm.begin(), perm.end()));
    checks.push_back(t);
  };
  if (n == 3) {
    const double s = 2 * std::sqrt(3.0);
    make("(1,-3,1,1)/(2 sqrt 3)", {1, -3, 1, 1}, s, -7.0 / 6, 1 / std::sqrt(3.0));
    make("(-1,3,-1,-1)/(2 sqrt 3)", {-1, 3, -1, -1}, s, -7.0 / 6, -1 / std::sqrt(3.0));
  } else if (n == 4) {
    const double s30 = std::sqrt(30.0), s5 = std::sqrt(5.0);
    make("(-2,-2,-2,3,3)/sqrt 30", {-2, -2, -2, 3, 3}, s30, -7.0 / 15, -2.0 / 75 * s30);
    make("(2,2,2,-3,-3)/sqrt 30", {2, 2, 2, -3, -3}, s30, -7.0 / 15, 2.0 / 75 * s30);
    make("(1,-4,1,1,1)/(2 sqrt 5)", {1, -4, 1, 1, 1}, 2 * s5, -13.0 / 10, 6.0 / 25 * s5);
    make("(-1,4,-1,-1,-1)/(2 sqrt 5)", {-1, 4, -1, -1, -1}, 2 * s5, -13.0 / 10, -6.0 / 25 * s5);
  } else {
    throw Error(ErrorKind::invalid_argument, "explicit tuples are known for n = 3 and n = 4");
  }
  return checks;
}

}  // namespace cylinders
