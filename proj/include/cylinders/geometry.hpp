#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "cylinders/error.hpp"
#include "cylinders/linalg.hpp"

namespace cylinders {

inline constexpr double kDegeneracyTol = 1e-10;

/// n+1 affinely independent points in E^n, one vertex per row. The last
/// vertex is the one moved to the origin by `translated()`.
class Simplex {
 public:
  Simplex() = default;

  explicit Simplex(Matrix vertices) : vertices_(std::move(vertices)) {
    const auto rows = vertices_.rows();
    const auto n = vertices_.cols();
    if (n < 2)
      throw Error(ErrorKind::dimension_mismatch, "simplex dimension must be at least 2");
    if (rows != n + 1)
      throw Error(ErrorKind::dimension_mismatch,
                  "expected " + std::to_string(n + 1) + " vertices in dimension " +
                      std::to_string(n) + ", got " + std::to_string(rows));
    if (!vertices_.allFinite())
      throw Error(ErrorKind::invalid_argument, "vertex coordinates must be finite");
    translated_ = vertices_.topRows(n).rowwise() - vertices_.row(n);
    max_edge_ = 0;
    for (Eigen::Index i = 0; i <= n; ++i)
      for (Eigen::Index j = i + 1; j <= n; ++j)
        max_edge_ = std::max(max_edge_, (vertices_.row(i) - vertices_.row(j)).norm());
    const double det = translated_.determinant();
    const double threshold = kDegeneracyTol * std::pow(max_edge_, static_cast<double>(n));
    if (!(std::abs(det) >= threshold) || max_edge_ == 0)
      throw Error(ErrorKind::degenerate_simplex,
                  "degenerate simplex: |det(p_i - p_last)| = " + std::to_string(std::abs(det)) +
                      " is below 1e-10 * (max edge)^n = " + std::to_string(threshold));
    max_norm_ = translated_.rowwise().norm().maxCoeff();
  }

  int dim() const { return static_cast<int>(vertices_.cols()); }
  int size() const { return static_cast<int>(vertices_.rows()); }
  const Matrix& vertices() const { return vertices_; }
  Vector vertex(int i) const { return vertices_.row(i).transpose(); }
  Vector origin() const { return vertices_.row(dim()).transpose(); }

  /// n x n matrix whose rows are p_i - p_{n+1}.
  const Matrix& translated() const { return translated_; }
  double max_edge() const { return max_edge_; }
  /// Largest vertex norm after translation; residual tolerances scale with powers of it.
  double max_norm() const { return max_norm_; }
  double scale() const { return std::pow(max_norm_, 4); }

 private:
  Matrix vertices_;
  Matrix translated_;
  double max_edge_ = 0;
  double max_norm_ = 0;
};

/// Line {u + t v}, u the point closest to the origin, v a canonical unit vector.
struct AxisLine {
  Vector u;
  Vector v;

  static AxisLine through(const Vector& point, const Vector& direction) {
    AxisLine line;
    line.v = canonical_direction(direction.normalized());
    line.u = point - point.dot(line.v) * line.v;
    return line;
  }
};

struct Cylinder {
  AxisLine axis;
  double radius = 0;
};

inline double point_line_distance(const Vector& p, const AxisLine& line) {
  const Vector d = p - line.u;
  return (d - d.dot(line.v) * line.v).norm();
}

/// v²u² − 2v²(u·p) + v²p² − (v·p)² − r²v²; zero exactly when dist(p, line) = r.
inline double tangency_residual(const AxisLine& line, const Vector& p, double r) {
  const double v2 = line.v.squaredNorm();
  const double vp = line.v.dot(p);
  return v2 * line.u.squaredNorm() - 2 * v2 * line.u.dot(p) + v2 * p.squaredNorm() - vp * vp -
         r * r * v2;
}

struct AxisRecovery {
  Vector u;  // moment point with p_{n+1} at the origin
  double radius = 0;
  double g1_residual = 0;  // u·v; zero iff the line is circumscribing
  AxisLine line;           // same line in input coordinates
};

template <class Solver>
AxisRecovery recover_axis_with(const Solver& lu, const Simplex& s, const Vector& direction) {
  const Vector v = direction.normalized();
  const Matrix& m = s.translated();
  const Vector mv = m * v;
  const Vector b = m.rowwise().squaredNorm() - mv.cwiseProduct(mv);
  AxisRecovery out;
  out.u = 0.5 * lu.solve(b);
  out.radius = out.u.norm();
  out.g1_residual = out.u.dot(v);
  out.line = AxisLine::through(out.u + s.origin(), v);
  return out;
}

/// Axis point and radius of the cylinder with direction v whose surface meets
/// p_1..p_n and p_{n+1}.
inline AxisRecovery recover_axis(const Vector& direction, const Simplex& s) {
  if (direction.size() != s.dim())
    throw Error(ErrorKind::dimension_mismatch, "direction length does not match simplex");
  Eigen::PartialPivLU<Matrix> lu(s.translated());
  return recover_axis_with(lu, s, direction);
}

/// Facet areas of a tetrahedron, entry i is the facet opposite vertex i.
inline std::array<double, 4> face_areas_e3(const Simplex& s) {
  if (s.dim() != 3) throw Error(ErrorKind::dimension_mismatch, "face areas need a 3-simplex");
  std::array<double, 4> areas{};
  for (int skip = 0; skip < 4; ++skip) {
    std::array<Eigen::Vector3d, 3> p;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) p[k++] = s.vertices().row(i).transpose();
    areas[skip] = 0.5 * (p[1] - p[0]).cross(p[2] - p[0]).norm();
  }
  return areas;
}

/// Largest |dist(p_i, axis) − r| / (1 + r) over the vertices.
inline double equidistance_error(const Simplex& s, const Cylinder& c) {
  double worst = 0;
  for (int i = 0; i < s.size(); ++i)
    worst = std::max(worst,
                     std::abs(point_line_distance(s.vertex(i), c.axis) - c.radius) / (1 + c.radius));
  return worst;
}

}  // namespace cylinders
