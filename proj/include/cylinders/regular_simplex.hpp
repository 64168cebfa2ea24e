#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cylinders/combinatorics.hpp"
#include "cylinders/error.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/polynomial.hpp"

namespace cylinders {

inline constexpr int kMaxRegularDim = 9;

/// Regular simplex with edge √2: vertices e_1..e_{n+1} of the hyperplane
/// Σx = 1 in E^{n+1}, plus an isometric chart to E^n.
struct RegularSimplex {
  int n = 0;
  Matrix basis;   // (n+1) x n, orthonormal columns spanning {Σx = 0}
  Simplex chart;  // vertex i is row i of `basis`

  /// Direction with Σv = 0 in E^{n+1} to chart coordinates, and back.
  Vector to_chart(const Vector& v) const { return basis.transpose() * v; }
  Vector from_chart(const Vector& w) const { return basis * w; }
};

inline RegularSimplex regular_vertices(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "regular simplex needs n >= 2");
  RegularSimplex out;
  out.n = n;
  // Helmert basis: b_k = (1, ..., 1, −k, 0, ...)/√(k(k+1)).
  out.basis = Matrix::Zero(n + 1, n);
  for (int k = 1; k <= n; ++k) {
    const double s = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) out.basis(i, k - 1) = s;
    out.basis(k, k - 1) = -k * s;
  }
  out.chart = Simplex(out.basis);
  return out;
}

template <class T>
struct Sigmas {
  T s1{}, s2{}, s3{}, s4{};
};

/// Elementary symmetric functions σ1..σ4 from power sums (Newton's
/// identities); σ4 is 0 when there are fewer than four components.
template <class Derived>
auto sigma_eval(const Eigen::MatrixBase<Derived>& v) {
  using T = typename Derived::Scalar;
  std::array<T, 5> p{};
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    T x = v[i], xp = x;
    for (int k = 1; k <= 4; ++k, xp *= x) p[k] += xp;
  }
  Sigmas<T> s;
  s.s1 = p[1];
  s.s2 = (s.s1 * p[1] - p[2]) / T(2);
  s.s3 = (s.s2 * p[1] - s.s1 * p[2] + p[3]) / T(3);
  s.s4 = v.size() >= 4 ? (s.s3 * p[1] - s.s2 * p[2] + s.s1 * p[3] - p[4]) / T(4) : T(0);
  return s;
}

/// r² of a feasible direction (σ1 = 0, σ2 = −½, σ3 = 0) of the regular simplex.
inline double regular_r2_from_sigma4(int n, double sigma4) {
  return 9.0 * (n - 1) / (8.0 * (n + 1)) - sigma4;
}

/// A critical direction of the regular-simplex program, up to permutation
/// of components: distinct values with their multiplicities.
struct CensusEntry {
  std::array<int, 3> shape{};          // block sizes of the solved system, ascending
  std::vector<Complex> values;         // distinct component values
  std::vector<int> multiplicity;       // matching block sizes after merging equal values
  bool real = false;
  std::uint64_t count = 0;             // distinct full-length vectors in the orbit
  Complex sigma4;
  double r2 = 0;                       // real entries only

  Eigen::VectorXcd vector() const {
    int total = 0;
    for (int m : multiplicity) total += m;
    Eigen::VectorXcd v(total);
    int k = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (int j = 0; j < multiplicity[i]; ++j) v[k++] = values[i];
    return v;
  }
  Vector real_vector() const { return vector().real(); }
};

struct ShapeReport {
  std::vector<int> shape;
  int solutions = 0;  // isolated solutions of the reduced system
  std::uint64_t vectors = 0;  // full-length vectors contributed (new orbits only)
  bool positive_dimensional = false;
};

struct Census {
  int n = 0;
  std::vector<CensusEntry> entries;
  std::vector<ShapeReport> shapes;
  std::uint64_t total = 0;
  std::uint64_t real_vectors = 0;
  std::uint64_t complex_vectors = 0;
  std::uint64_t canonical_real_directions = 0;  // real vectors up to v ≡ −v
  std::uint64_t stirling_bound = 0;
};

namespace detail {

inline bool same_value(Complex a, Complex b, double tol) { return std::abs(a - b) < tol; }

// Merge equal values; sort by (real, imag) so the key is canonical.
inline void merge_values(std::vector<Complex>& values, std::vector<int>& mult, double tol) {
  std::vector<Complex> v;
  std::vector<int> m;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mult[i] == 0) continue;
    bool merged = false;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (same_value(v[j], values[i], tol)) {
        m[j] += mult[i];
        merged = true;
        break;
      }
    if (!merged) {
      v.push_back(values[i]);
      m.push_back(mult[i]);
    }
  }
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(v[a].real() - v[b].real()) > tol) return v[a].real() < v[b].real();
    return v[a].imag() < v[b].imag();
  });
  values.clear();
  mult.clear();
  for (auto i : idx) {
    values.push_back(v[i]);
    mult.push_back(m[i]);
  }
}

inline bool same_orbit(const std::vector<Complex>& va, const std::vector<int>& ma,
                       const std::vector<Complex>& vb, const std::vector<int>& mb, double tol) {
  if (va.size() != vb.size()) return false;
  std::vector<bool> used(vb.size(), false);
  for (std::size_t i = 0; i < va.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < vb.size(); ++j)
      if (!used[j] && ma[i] == mb[j] && same_value(va[i], vb[j], tol)) {
        used[j] = found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Gauss-Newton on Σ m_i x_i = 0, Σ m_i x_i² = 1, Σ m_i x_i³ = 0 over the
// distinct values; true when the polished point is feasible to 1e-9.
inline bool polish_feasible(std::vector<Complex>& x, const std::vector<int>& m) {
  const auto d = static_cast<Eigen::Index>(x.size());
  auto residual = [&](const std::vector<Complex>& y) {
    Eigen::Vector3cd r(0, -1, 0);
    for (Eigen::Index i = 0; i < d; ++i) {
      r[0] += double(m[i]) * y[i];
      r[1] += double(m[i]) * y[i] * y[i];
      r[2] += double(m[i]) * y[i] * y[i] * y[i];
    }
    return r;
  };
  for (int it = 0; it < 30; ++it) {
    const Eigen::Vector3cd r = residual(x);
    if (r.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::MatrixXcd j(3, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      j(0, i) = double(m[i]);
      j(1, i) = 2.0 * double(m[i]) * x[i];
      j(2, i) = 3.0 * double(m[i]) * x[i] * x[i];
    }
    const Eigen::VectorXcd dx = j.completeOrthogonalDecomposition().solve(-r);
    for (Eigen::Index i = 0; i < d; ++i) x[i] += dx[i];
    if (dx.norm() < 1e-16) break;
  }
  return residual(x).cwiseAbs().maxCoeff() < 1e-9;
}

inline std::uint64_t orbit_size(const std::vector<int>& mult) {
  std::uint64_t out = 1;
  int total = 0;
  for (int m : mult) {
    total += m;
    out *= binomial(total, m);
  }
  return out;
}

}  // namespace detail

/// All critical directions (real and complex) of max σ4 s.t. σ1 = 0,
/// σ2 = −½, σ3 = 0 in E^{n+1}, enumerated through block shapes of at most
/// three distinct values.
inline Census enumerate_all_critical(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "regular census needs n >= 2");
  if (n > kMaxRegularDim)
    throw Error(ErrorKind::dimension_too_large,
                "regular census supports n <= " + std::to_string(kMaxRegularDim));
  constexpr double kTol = 1e-8;
  const int total = n + 1;
  Census census;
  census.n = n;
  census.stirling_bound = 6 * stirling2(total, 3);

  // Ordered block values -> polished, merged orbit. Values that coincide
  // (within 1e-6) are merged first: there the block system has a multiple
  // root and its own Newton iteration only reaches ~1e-8.
  std::vector<std::vector<Complex>> shape_seen;
  auto add = [&](std::vector<Complex> ordered, std::vector<int> sizes, ShapeReport& rep,
                 const std::array<int, 3>& shape) {
    std::vector<Complex> values = ordered;
    std::vector<int> mult = sizes;
    detail::merge_values(values, mult, 1e-6);
    if (!detail::polish_feasible(values, mult)) return;
    for (auto& x : ordered) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < values.size(); ++j)
        if (std::abs(values[j] - x) < std::abs(values[best] - x)) best = j;
      x = values[best];
    }
    for (const auto& seen : shape_seen) {
      bool same = seen.size() == ordered.size();
      for (std::size_t i = 0; same && i < ordered.size(); ++i)
        same = detail::same_value(seen[i], ordered[i], kTol);
      if (same) return;
    }
    shape_seen.push_back(ordered);
    ++rep.solutions;
    for (const auto& e : census.entries)
      if (detail::same_orbit(e.values, e.multiplicity, values, mult, kTol)) return;
    CensusEntry e;
    e.shape = shape;
    e.values = values;
    e.multiplicity = mult;
    e.real = true;
    for (auto& x : e.values) {
      if (std::abs(x.imag()) < kTol) x = Complex(x.real(), 0.0);
      else e.real = false;
    }
    e.count = detail::orbit_size(mult);
    e.sigma4 = sigma_eval(e.vector()).s4;
    if (e.real) e.r2 = regular_r2_from_sigma4(n, e.sigma4.real());
    rep.vectors += e.count;
    census.entries.push_back(e);
  };

  // One block: σ1 = 0 forces the value 0, contradicting Σv² = 1.
  {
    ShapeReport rep;
    shape_seen.clear();
    rep.shape = {total};
    add({Complex(0)}, {total}, rep, {0, 0, total});
    census.shapes.push_back(rep);
  }
  // Two blocks k + l: v2 = −k v1 / l, then k v1² + l v2² = 1 fixes v1 up to sign.
  for (int k = 1; 2 * k <= total; ++k) {
    const int l = total - k;
    ShapeReport rep;
    shape_seen.clear();
    rep.shape = {k, l};
    const double a = 1.0 / std::sqrt(k + double(k) * k / l);
    for (double sgn : {1.0, -1.0}) {
      const Complex v1 = sgn * a, v2 = -double(k) / l * v1;
      add({v1, v2}, {k, l}, rep, {0, k, l});
    }
    census.shapes.push_back(rep);
  }
  // Three blocks k <= l <= m: eliminate v3 = −(k v1 + l v2)/m and solve the
  // quadratic/cubic pair in (v1, v2).
  for (int k = 1; 3 * k <= total; ++k)
    for (int l = k; k + 2 * l <= total; ++l) {
      const int m = total - k - l;
      ShapeReport rep;
      shape_seen.clear();
      rep.shape = {k, l, m};
      const double ck = -double(k) / m, cl = -double(l) / m;  // v3 = ck v1 + cl v2
      BivariatePolynomial quad(2, 2), cubic(3, 3);
      // k x² + l y² + m (ck x + cl y)² − 1
      quad.at(2, 0) = k + m * ck * ck;
      quad.at(1, 1) = 2 * m * ck * cl;
      quad.at(0, 2) = l + m * cl * cl;
      quad.at(0, 0) = -1;
      // k x³ + l y³ + m (ck x + cl y)³   (Σv³ = 3σ3 when σ1 = 0)
      cubic.at(3, 0) = k + m * ck * ck * ck;
      cubic.at(2, 1) = 3 * m * ck * ck * cl;
      cubic.at(1, 2) = 3 * m * ck * cl * cl;
      cubic.at(0, 3) = l + m * cl * cl * cl;
      const auto sol = solve_bivariate(quad, cubic);
      rep.positive_dimensional = sol.positive_dimensional;
      for (const auto& root : sol.roots) {
        const Complex v3 = ck * root.x + cl * root.y;
        add({root.x, root.y, v3}, {k, l, m}, rep, {k, l, m});
      }
      census.shapes.push_back(rep);
    }
  std::sort(census.entries.begin(), census.entries.end(),
            [](const CensusEntry& a, const CensusEntry& b) {
              if (a.real != b.real) return a.real;
              if (a.shape != b.shape) return a.shape < b.shape;
              if (std::abs(a.sigma4.real() - b.sigma4.real()) > 1e-12)
                return a.sigma4.real() > b.sigma4.real();
              return a.sigma4.imag() < b.sigma4.imag();
            });
  for (const auto& e : census.entries) {
    census.total += e.count;
    (e.real ? census.real_vectors : census.complex_vectors) += e.count;
  }
  census.canonical_real_directions = census.real_vectors / 2;
  return census;
}

struct RegularMinimum {
  double r = 0;
  double sigma4 = 0;
  Vector v;        // direction in E^{n+1}
  Vector v_chart;  // same direction in chart coordinates
};

inline RegularMinimum regular_min_radius(int n, const Census& census) {
  const CensusEntry* best = nullptr;
  for (const auto& e : census.entries)
    if (e.real && (!best || e.sigma4.real() > best->sigma4.real())) best = &e;
  if (!best) throw Error(ErrorKind::no_critical_point_found, "no real census entry");
  RegularMinimum out;
  out.sigma4 = best->sigma4.real();
  out.r = std::sqrt(regular_r2_from_sigma4(n, out.sigma4));
  out.v = best->real_vector();
  for (auto& x : out.v) x = std::abs(x) < 1e-14 ? 0.0 : x;
  out.v = canonical_direction(out.v);
  out.v_chart = regular_vertices(n).to_chart(out.v);
  return out;
}

inline RegularMinimum regular_min_radius(int n) {
  return regular_min_radius(n, enumerate_all_critical(n));
}

struct StirlingCheck {
  int n = 0;
  std::uint64_t census = 0;
  std::uint64_t bound = 0;
  bool attained = false;
  std::int64_t slack = 0;
};

inline StirlingCheck stirling_census_check(int n) {
  if (n < 2 || n > 7) throw Error(ErrorKind::invalid_argument, "Stirling check covers 2 <= n <= 7");
  const Census c = enumerate_all_critical(n);
  StirlingCheck out;
  out.n = n;
  out.census = c.total;
  out.bound = c.stirling_bound;
  out.attained = c.total == c.stirling_bound;
  out.slack = static_cast<std::int64_t>(c.stirling_bound) - static_cast<std::int64_t>(c.total);
  return out;
}

}  // namespace cylinders
