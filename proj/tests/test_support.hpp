#pragma once

#include <cmath>
#include <random>

#include "cylinders/formulation.hpp"
#include "cylinders/geometry.hpp"

namespace cylinders::testing {

inline Vector gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

/// Vertices uniform in [-1, 1]^n, redrawn until comfortably nondegenerate.
inline Simplex random_simplex(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    Matrix v(n + 1, n);
    for (auto& x : v.reshaped()) x = u(rng);
    const Matrix m = v.topRows(n).rowwise() - v.row(n);
    double edge = 0;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) edge = std::max(edge, (v.row(i) - v.row(j)).norm());
    if (std::abs(m.determinant()) > 1e-3 * std::pow(edge, n)) return Simplex(v);
  }
}

inline Matrix random_rotation(std::mt19937_64& rng, int n) {
  Matrix a(n, n);
  for (int j = 0; j < n; ++j) a.col(j) = gaussian(rng, n);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

inline Simplex rigid_motion(std::mt19937_64& rng, const Simplex& s) {
  const Matrix q = random_rotation(rng, s.dim());
  const Vector shift = gaussian(rng, s.dim());
  return Simplex((s.vertices() * q.transpose()).rowwise() + shift.transpose());
}

inline Simplex regular_tetrahedron() {
  Matrix v(4, 3);
  v << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1;
  return Simplex(v);
}

inline Simplex right_corner() {
  Matrix v(4, 3);
  v << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  return Simplex(v);
}

struct FdGradients {
  Vector f, g1, g2;
};

inline FdGradients fd_gradients(const Formulation& F, const Vector& v, double h) {
  const int n = static_cast<int>(v.size());
  FdGradients out{Vector(n), Vector(n), Vector(n)};
  for (int i = 0; i < n; ++i) {
    Vector p = v, m = v;
    p[i] += h;
    m[i] -= h;
    out.f[i] = (F.f(p) - F.f(m)) / (2 * h);
    out.g1[i] = (F.g1(p) - F.g1(m)) / (2 * h);
    out.g2[i] = (F.g2(p) - F.g2(m)) / (2 * h);
  }
  return out;
}

}  // namespace cylinders::testing
