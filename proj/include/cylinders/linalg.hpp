#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <type_traits>
#include <utility>

#include "cylinders/error.hpp"

namespace cylinders {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

template <int N>
using VecN = Eigen::Matrix<double, N, 1>;
template <int N>
using MatN = Eigen::Matrix<double, N, N>;

// Dimension arithmetic that survives Eigen::Dynamic.
constexpr int dim_plus(int n, int k) { return n == Eigen::Dynamic ? Eigen::Dynamic : n + k; }

/// Sign convention for undirected lines: the first component with magnitude
/// above `zero_tol * |v|` is made positive.
template <class Derived>
auto canonical_direction(const Eigen::MatrixBase<Derived>& v, double zero_tol = 1e-12) {
  typename Derived::PlainObject out = v;
  const double scale = out.norm();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (std::abs(out[i]) > zero_tol * scale) {
      if (out[i] < 0) out = -out;
      break;
    }
  }
  return out;
}

/// Orthonormal basis of the orthogonal complement of unit vector `v`, as the
/// columns of an n x (n-1) matrix (Householder construction).
template <int N>
Eigen::Matrix<double, N, dim_plus(N, -1)> complement_basis(const VecN<N>& v) {
  const Eigen::Index n = v.size();
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  VecN<N> w = v;
  w[k] += (v[k] >= 0 ? 1.0 : -1.0);
  const double wn2 = w.squaredNorm();
  // H = I - 2 w w^T / |w|^2 maps v to -sign(v_k) e_k; the other columns of H
  // are orthonormal and orthogonal to v.
  Eigen::Matrix<double, N, dim_plus(N, -1)> basis;
  basis.resize(n, n - 1);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == k) continue;
    VecN<N> e = VecN<N>::Zero(n);
    e[j] = 1.0;
    basis.col(col++) = e - (2.0 * w[j] / wn2) * w;
  }
  return basis;
}

/// Calls `fn(std::integral_constant<int, N>{})` with N = 3 for tetrahedra
/// (the hot path of the E^3 pipelines) and Eigen::Dynamic otherwise.
template <class Fn>
decltype(auto) dispatch_dimension(int n, Fn&& fn) {
  if (n == 3) return std::forward<Fn>(fn)(std::integral_constant<int, 3>{});
  return std::forward<Fn>(fn)(std::integral_constant<int, Eigen::Dynamic>{});
}

}  // namespace cylinders
