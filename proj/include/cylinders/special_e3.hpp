#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "cylinders/error.hpp"
#include "cylinders/geometry.hpp"

namespace cylinders {

enum class SimplexTag { generic, two_pairs, equifacial };

constexpr std::string_view to_string(SimplexTag t) {
  switch (t) {
    case SimplexTag::generic: return "generic";
    case SimplexTag::two_pairs: return "two_pairs";
    case SimplexTag::equifacial: return "equifacial";
  }
  return "generic";
}

struct SimplexClassE3 {
  SimplexTag tag = SimplexTag::generic;
  std::array<double, 4> areas{};
  std::vector<std::vector<int>> area_partition;  // facet indices grouped by equal area
  int extrema_bound = 36;  // 36 generic, 20 + 8 two pairs, 3 * 8 equifacial
};

inline constexpr double kAreaTol = 1e-9;

inline SimplexClassE3 classify_e3(const Simplex& s) {
  if (s.dim() != 3) throw Error(ErrorKind::dimension_mismatch, "facet-area classes need n = 3");
  SimplexClassE3 out;
  out.areas = face_areas_e3(s);
  const double amax = *std::max_element(out.areas.begin(), out.areas.end());
  auto same = [&](int i, int j) { return std::abs(out.areas[i] - out.areas[j]) <= kAreaTol * amax; };
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return out.areas[a] < out.areas[b] || (out.areas[a] == out.areas[b] && a < b);
  });
  for (int idx : order) {
    if (!out.area_partition.empty() && same(out.area_partition.back().front(), idx))
      out.area_partition.back().push_back(idx);
    else
      out.area_partition.push_back({idx});
  }
  if (out.area_partition.size() == 1) {
    out.tag = SimplexTag::equifacial;
    out.extrema_bound = 24;
  } else if (out.area_partition.size() == 2 && out.area_partition[0].size() == 2) {
    out.tag = SimplexTag::two_pairs;
    out.extrema_bound = 20 + 8;
  }
  return out;
}

/// Box representation of an equifacial tetrahedron: vertex i equals
/// frame * box_vertex(i) + center, with box vertices (w1,w2,w3),
/// (w1,−w2,−w3), (−w1,w2,−w3), (−w1,−w2,w3).
struct BoxParams {
  Eigen::Vector3d w;
  Eigen::Matrix3d frame;  // orthogonal; det −1 for mirror-image box placements
  Eigen::Vector3d center;

  static Eigen::Vector3d box_vertex(const Eigen::Vector3d& w, int i) {
    static constexpr int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    return {signs[i][0] * w[0], signs[i][1] * w[1], signs[i][2] * w[2]};
  }

  Eigen::Vector3d vertex(int i) const { return frame * box_vertex(w, i) + center; }
};

/// The three opposite-edge pairs, as ((a,b),(c,d)); pair k is bisected by
/// box axis k.
inline constexpr int kOppositeEdges[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};

inline Simplex box_simplex(const Eigen::Vector3d& w) {
  Matrix v(4, 3);
  for (int i = 0; i < 4; ++i) v.row(i) = BoxParams::box_vertex(w, i).transpose();
  return Simplex(v);
}

inline BoxParams box_params(const Simplex& s) {
  if (classify_e3(s).tag != SimplexTag::equifacial)
    throw Error(ErrorKind::not_equifacial, "facet areas are not all equal");
  BoxParams out;
  const Matrix& p = s.vertices();
  out.center = p.colwise().mean().transpose();
  for (int k = 0; k < 3; ++k) {
    const auto& e = kOppositeEdges[k];
    const Eigen::Vector3d c =
        0.5 * (p.row(e[0]) + p.row(e[1]) - p.row(e[2]) - p.row(e[3])).transpose();
    out.w[k] = 0.5 * c.norm();
    out.frame.col(k) = c.normalized();
  }
  const double dev = (out.frame.transpose() * out.frame - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (dev > 1e-7)
    throw Error(ErrorKind::not_equifacial,
                "opposite-edge midpoint connectors are not orthogonal (deviation " +
                    std::to_string(dev) + ")");
  return out;
}

/// r² along the axis family of a box tetrahedron, with z2 = v2².
inline double rho_profile(const Eigen::Vector3d& w, double z2) {
  const double w1 = w[0] * w[0], w2 = w[1] * w[1], w3 = w[2] * w[2];
  const double a = w2 * w3 / w1;
  return -a * z2 * z2 - (w2 - w3 - a) * z2 + w1 + w2;
}

struct EquifacialCandidate {
  int pair = 0;  // index into kOppositeEdges
  Cylinder cylinder;
  double g1_residual = 0;
};

/// Axes perpendicular to both edges of an opposite pair, one per pair.
inline std::vector<EquifacialCandidate> equifacial_candidates(const Simplex& s) {
  if (classify_e3(s).tag != SimplexTag::equifacial)
    throw Error(ErrorKind::not_equifacial, "facet areas are not all equal");
  std::vector<EquifacialCandidate> out;
  const Matrix& p = s.vertices();
  for (int k = 0; k < 3; ++k) {
    const auto& e = kOppositeEdges[k];
    const Eigen::Vector3d a = (p.row(e[1]) - p.row(e[0])).transpose();
    const Eigen::Vector3d b = (p.row(e[3]) - p.row(e[2])).transpose();
    const AxisRecovery rec = recover_axis(Vector(a.cross(b).normalized()), s);
    out.push_back({k, {rec.line, rec.radius}, rec.g1_residual});
  }
  return out;
}

inline Cylinder equifacial_min_cylinder(const Simplex& s) {
  const auto cands = equifacial_candidates(s);
  const EquifacialCandidate* best = &cands.front();
  for (const auto& c : cands)
    if (c.cylinder.radius < best->cylinder.radius) best = &c;
  return best->cylinder;
}

}  // namespace cylinders
