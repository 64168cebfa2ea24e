#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace cylinders {

template <int D>
struct Ball {
  Eigen::Matrix<double, D, 1> center;
  double radius2 = -1;  // negative: empty ball
  double radius() const { return radius2 > 0 ? std::sqrt(radius2) : 0.0; }
};

namespace detail {

// Smallest ball with all of `support` on its boundary (circumball within
// their affine hull).
template <int D>
Ball<D> circumball(const std::vector<Eigen::Matrix<double, D, 1>>& support) {
  using V = Eigen::Matrix<double, D, 1>;
  Ball<D> b;
  const std::size_t k = support.size();
  if (k == 0) return b;
  if (k == 1) {
    b.center = support[0];
    b.radius2 = 0;
    return b;
  }
  if (k == 2) {
    b.center = 0.5 * (support[0] + support[1]);
    b.radius2 = 0.25 * (support[1] - support[0]).squaredNorm();
    return b;
  }
  const V& o = support[0];
  const int m = static_cast<int>(k) - 1;
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const V di = support[i + 1] - o;
    rhs[i] = di.squaredNorm();
    for (int j = 0; j < m; ++j) a(i, j) = 2.0 * di.dot(support[j + 1] - o);
  }
  const Eigen::VectorXd alpha = a.completeOrthogonalDecomposition().solve(rhs);
  V c = o;
  for (int i = 0; i < m; ++i) c += alpha[i] * (support[i + 1] - o);
  b.center = c;
  b.radius2 = 0;
  for (const auto& p : support) b.radius2 = std::max(b.radius2, (p - c).squaredNorm());
  return b;
}

template <int D>
bool inside(const Ball<D>& b, const Eigen::Matrix<double, D, 1>& p) {
  if (b.radius2 < 0) return false;
  return (p - b.center).squaredNorm() <= b.radius2 * (1 + 1e-12) + 1e-300;
}

template <int D>
Ball<D> welzl(const std::vector<Eigen::Matrix<double, D, 1>>& pts, std::size_t count,
              std::vector<Eigen::Matrix<double, D, 1>>& support, int dim) {
  if (count == 0 || static_cast<int>(support.size()) == dim + 1) return circumball<D>(support);
  const auto& p = pts[count - 1];
  Ball<D> b = welzl<D>(pts, count - 1, support, dim);
  if (inside(b, p)) return b;
  support.push_back(p);
  b = welzl<D>(pts, count - 1, support, dim);
  support.pop_back();
  return b;
}

}  // namespace detail

/// Smallest enclosing ball by Welzl's recursion (points processed in the
/// given order; deterministic).
template <int D>
Ball<D> min_ball(const std::vector<Eigen::Matrix<double, D, 1>>& pts) {
  std::vector<Eigen::Matrix<double, D, 1>> support;
  if (pts.empty()) return {};
  const int dim = static_cast<int>(pts.front().size());
  return detail::welzl<D>(pts, pts.size(), support, dim);
}

/// Planar specialization, allocation free: the iterative form of the same
/// recursion (a point outside the current disk is on the boundary of the
/// disk of the points seen so far).
inline Ball<2> min_disk(const Eigen::Vector2d* p, int count) {
  using V = Eigen::Vector2d;
  Ball<2> b;
  auto disk2 = [](const V& a, const V& c) {
    Ball<2> d;
    d.center = 0.5 * (a + c);
    d.radius2 = 0.25 * (c - a).squaredNorm();
    return d;
  };
  auto disk3 = [&](const V& a, const V& c, const V& e) {
    const V x = c - a, y = e - a;
    const double det = 2.0 * (x[0] * y[1] - x[1] * y[0]);
    if (std::abs(det) <= 1e-300) {
      // collinear: the farthest pair spans the disk
      Ball<2> d = disk2(a, c);
      for (const Ball<2>& o : {disk2(a, e), disk2(c, e)})
        if (o.radius2 > d.radius2) d = o;
      return d;
    }
    const double xx = x.squaredNorm(), yy = y.squaredNorm();
    Ball<2> d;
    d.center = a + V(y[1] * xx - x[1] * yy, x[0] * yy - y[0] * xx) / det;
    d.radius2 = std::max({(a - d.center).squaredNorm(), (c - d.center).squaredNorm(),
                          (e - d.center).squaredNorm()});
    return d;
  };
  if (count <= 0) return b;
  b.center = p[0];
  b.radius2 = 0;
  for (int i = 1; i < count; ++i) {
    if (detail::inside(b, p[i])) continue;
    b.center = p[i];
    b.radius2 = 0;
    for (int j = 0; j < i; ++j) {
      if (detail::inside(b, p[j])) continue;
      b = disk2(p[i], p[j]);
      for (int k = 0; k < j; ++k)
        if (!detail::inside(b, p[k])) b = disk3(p[i], p[j], p[k]);
    }
  }
  return b;
}

}  // namespace cylinders
