#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "cylinders/critical_solver.hpp"
#include "cylinders/error.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/linalg.hpp"
#include "cylinders/min_ball.hpp"

namespace cylinders {

/// Radius of the smallest ball enclosing the rows of `points` projected
/// onto the hyperplane orthogonal to unit vector v: the radius of the
/// thinnest enclosing cylinder with direction v.
inline double projection_radius(const Matrix& points, const Vector& v) {
  const int n = static_cast<int>(points.cols());
  if (v.size() != n) throw Error(ErrorKind::dimension_mismatch, "direction length does not match points");
  if (n == 3) {
    const Eigen::Vector3d d = v;
    const Eigen::Vector3d e1 = d.unitOrthogonal(), e2 = d.cross(e1);
    std::array<Eigen::Vector2d, 16> buf;
    std::vector<Eigen::Vector2d> heap;
    Eigen::Vector2d* p = buf.data();
    if (points.rows() > static_cast<Eigen::Index>(buf.size())) {
      heap.resize(points.rows());
      p = heap.data();
    }
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const Eigen::Vector3d q = points.row(i).transpose();
      p[i] = {q.dot(e1), q.dot(e2)};
    }
    return min_disk(p, static_cast<int>(points.rows())).radius();
  }
  const Matrix basis = complement_basis<Eigen::Dynamic>(v);
  const Matrix proj = points * basis;
  std::vector<Vector> pts;
  for (Eigen::Index i = 0; i < proj.rows(); ++i) pts.push_back(proj.row(i).transpose());
  return min_ball<Eigen::Dynamic>(pts).radius();
}

/// Axis of the thinnest cylinder with direction v (center of the projected
/// enclosing ball), together with that radius.
inline Cylinder projection_cylinder(const Matrix& points, const Vector& v) {
  const Vector d = v.normalized();
  const Matrix basis = complement_basis<Eigen::Dynamic>(d);
  const Matrix proj = points * basis;
  std::vector<Vector> pts;
  for (Eigen::Index i = 0; i < proj.rows(); ++i) pts.push_back(proj.row(i).transpose());
  const auto ball = min_ball<Eigen::Dynamic>(pts);
  return {AxisLine::through(basis * ball.center, d), ball.radius()};
}

struct OracleOptions {
  int samples = 200000;
  int refine_iters = 200;  // Nelder–Mead iterations per refinement round
  std::uint64_t rng_seed = 42;
  int seeds = 8;  // distinct sample directions refined
};

struct OracleResult {
  double r = 0;
  Vector v;
  double sampled_r = 0;  // best raw sample before refinement
  long evaluations = 0;
};

namespace detail {

// Downhill simplex over x in R^m, returns the best vertex.
inline Vector nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                          double step, int iters, long& evals) {
  const Eigen::Index m = x0.size();
  std::vector<Vector> x(m + 1, x0);
  std::vector<double> fx(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) x[i + 1][i] += step;
  for (Eigen::Index i = 0; i <= m; ++i) fx[i] = f(x[i]);
  evals += m + 1;
  std::vector<int> order(m + 1);
  for (int it = 0; it < iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order.front(), worst = order.back(), second = order[m - 1];
    double diam = 0;
    for (Eigen::Index i = 0; i <= m; ++i) diam = std::max(diam, (x[i] - x[best]).norm());
    if (diam < 1e-14) break;
    Vector centroid = Vector::Zero(m);
    for (Eigen::Index i = 0; i <= m; ++i)
      if (i != worst) centroid += x[i];
    centroid /= static_cast<double>(m);
    const Vector xr = centroid + (centroid - x[worst]);
    const double fr = f(xr);
    ++evals;
    if (fr < fx[best]) {
      const Vector xe = centroid + 2.0 * (centroid - x[worst]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) x[worst] = xe, fx[worst] = fe;
      else x[worst] = xr, fx[worst] = fr;
      continue;
    }
    if (fr < fx[second]) {
      x[worst] = xr, fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid))
                              : Vector(centroid + 0.5 * (x[worst] - centroid));
    const double fc = f(xc);
    ++evals;
    if (fc < std::min(fr, fx[worst])) {
      x[worst] = xc, fx[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == best) continue;
      x[i] = x[best] + 0.5 * (x[i] - x[best]);
      fx[i] = f(x[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(fx.begin(), fx.end());
  return x[it - fx.begin()];
}

}  // namespace detail

/// Upper-bound search for the smallest enclosing cylinder: projection radius
/// over a direction sample (Fibonacci hemisphere in E^3, Gaussian directions
/// otherwise), then Nelder–Mead on tangent charts around the best samples.
inline OracleResult oracle_min_enclosing(const Matrix& points, const OracleOptions& opt = {}) {
  if (opt.samples < 1) throw Error(ErrorKind::invalid_argument, "oracle needs at least one sample");
  const int n = static_cast<int>(points.cols());
  if (n < 2) throw Error(ErrorKind::dimension_mismatch, "points must live in dimension >= 2");
  const Matrix centered = points.rowwise() - points.colwise().mean();
  OracleResult out;

  std::vector<Vector> dirs;
  dirs.reserve(opt.samples);
  if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < opt.samples; ++i) {
      const double z = 1.0 - (i + 0.5) / opt.samples;
      const double rho = std::sqrt(std::max(0.0, 1 - z * z));
      const double phi = golden * i;
      dirs.push_back(Eigen::Vector3d(rho * std::cos(phi), rho * std::sin(phi), z));
    }
  } else {
    std::mt19937_64 rng(opt.rng_seed);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < opt.samples; ++i) {
      Vector d(n);
      for (int k = 0; k < n; ++k) d[k] = gauss(rng);
      dirs.push_back(d.normalized());
    }
  }
  std::vector<double> radii(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) radii[i] = projection_radius(centered, dirs[i]);
  out.evaluations = static_cast<long>(dirs.size());

  std::vector<int> idx(dirs.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t scan = std::min<std::size_t>(idx.size(), 4000);
  std::partial_sort(idx.begin(), idx.begin() + scan, idx.end(),
                    [&](int a, int b) { return radii[a] < radii[b] || (radii[a] == radii[b] && a < b); });
  std::vector<int> seeds;
  for (std::size_t t = 0; t < scan && static_cast<int>(seeds.size()) < opt.seeds; ++t) {
    bool distinct = true;
    for (int s : seeds) distinct = distinct && std::abs(dirs[idx[t]].dot(dirs[s])) < std::cos(0.05);
    if (distinct) seeds.push_back(idx[t]);
  }
  out.sampled_r = radii[idx.front()];
  out.r = out.sampled_r;
  out.v = dirs[idx.front()];

  const double spacing = std::pow(static_cast<double>(opt.samples), -1.0 / (n - 1));
  for (int s : seeds) {
    Vector center = dirs[s];
    double step = 4 * spacing;
    for (int round = 0; round < 3; ++round, step *= 0.25) {
      const Matrix chart = complement_basis<Eigen::Dynamic>(center);
      auto f = [&](const Vector& x) { return projection_radius(centered, (center + chart * x).normalized()); };
      const Vector x = detail::nelder_mead(f, Vector::Zero(n - 1), step, opt.refine_iters, out.evaluations);
      center = (center + chart * x).normalized();
    }
    const double r = projection_radius(centered, center);
    if (r < out.r) {
      out.r = r;
      out.v = center;
    }
  }
  out.v = canonical_direction(out.v);
  return out;
}

enum class Witness { circumscribing_4pts, pair_cylinder_a, pair_cone_b, pair_bisector_c };

constexpr std::string_view to_string(Witness w) {
  switch (w) {
    case Witness::circumscribing_4pts: return "circumscribing_4pts";
    case Witness::pair_cylinder_a: return "pair_cylinder_a";
    case Witness::pair_cone_b: return "pair_cone_b";
    case Witness::pair_bisector_c: return "pair_bisector_c";
  }
  return "circumscribing_4pts";
}

/// A cylinder from one of the restricted three-contact families of a vertex
/// pair (i, j) and a third vertex k. `contact_radius` is the common distance
/// of p_i, p_j, p_k from the axis; `cylinder.radius` is the largest vertex
/// distance, so the cylinder always encloses the simplex.
struct FamilyCandidate {
  Witness family = Witness::pair_cylinder_a;
  int i = 0, j = 0, k = 0;
  Cylinder cylinder;
  double contact_radius = 0;
  double contact_residual = 0;  // max |dist(p, axis) − contact_radius| over p_i, p_j, p_k
  double parameter = 0;         // offset (a) or angle (b, c) at the optimum
};

namespace detail {

// Grid of 64 seeds on [lo, hi], golden-section refinement of every grid
// local minimum. Returns (x, F(x)) with F minimal; F may be +inf where the
// family has no member.
inline std::pair<double, double> grid_golden(const std::function<double(double)>& F, double lo,
                                             double hi, bool periodic) {
  constexpr int kGrid = 64;
  std::array<double, kGrid + 1> xs{}, fs{};
  const int count = periodic ? kGrid : kGrid + 1;
  for (int t = 0; t < count; ++t) {
    xs[t] = lo + (hi - lo) * t / kGrid;
    fs[t] = F(xs[t]);
  }
  std::pair<double, double> best{xs[0], fs[0]};
  for (int t = 0; t < count; ++t)
    if (fs[t] < best.second) best = {xs[t], fs[t]};
  const double h = (hi - lo) / kGrid;
  for (int t = 0; t < count; ++t) {
    if (!std::isfinite(fs[t])) continue;
    const int tl = periodic ? (t + count - 1) % count : std::max(t - 1, 0);
    const int tr = periodic ? (t + 1) % count : std::min(t + 1, count - 1);
    if (fs[t] > fs[tl] || fs[t] > fs[tr]) continue;
    double a = xs[t] - h, b = xs[t] + h;
    if (!periodic) a = std::max(a, lo), b = std::min(b, hi);
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = F(c), fd = F(d);
    while (b - a > 1e-15 * (1 + std::abs(a) + std::abs(b))) {
      if (fc <= fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a);
        fc = F(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a);
        fd = F(d);
      }
    }
    const double x = fc <= fd ? c : d, fx = std::min(fc, fd);
    if (fx < best.second) best = {x, fx};
  }
  return best;
}

struct PairFrame {
  Eigen::Vector3d pi, pj, pk, pl, mid, d, e1, e2;
  double a = 0;
};

inline PairFrame pair_frame(const Simplex& s, int i, int j, int k) {
  PairFrame f;
  int l = 0;
  while (l == i || l == j || l == k) ++l;
  f.pi = s.vertex(i), f.pj = s.vertex(j), f.pk = s.vertex(k), f.pl = s.vertex(l);
  f.mid = 0.5 * (f.pi + f.pj);
  f.a = (f.pj - f.pi).norm();
  f.d = (f.pj - f.pi) / f.a;
  f.e1 = f.d.unitOrthogonal();
  f.e2 = f.d.cross(f.e1);
  return f;
}

inline double line_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& point,
                            const Eigen::Vector3d& dir) {
  const Eigen::Vector3d w = p - point;
  return (w - w.dot(dir) * dir).norm();
}

}  // namespace detail

/// Restricted minimization of the largest vertex distance over one
/// three-contact family. Throws empty_family when the family has no member
/// (for the bisector family also when |p_i − p_j| > 2 radius_cap).
inline FamilyCandidate case_ii_family(const Simplex& s, int i, int j, int k, Witness family,
                                      double radius_cap = std::numeric_limits<double>::infinity()) {
  if (s.dim() != 3) throw Error(ErrorKind::dimension_mismatch, "restricted families are defined in E^3");
  if (i == j || i == k || j == k || std::min({i, j, k}) < 0 || std::max({i, j, k}) > 3)
    throw Error(ErrorKind::invalid_argument, "i, j, k must be distinct vertex indices");
  if (family == Witness::circumscribing_4pts)
    throw Error(ErrorKind::invalid_argument, "not a restricted family");
  const detail::PairFrame fr = detail::pair_frame(s, i, j, k);
  const double inf = std::numeric_limits<double>::infinity();
  using V3 = Eigen::Vector3d;

  // Each family maps its parameter to an axis (point, unit direction) and
  // the common contact radius, or reports no member.
  struct Axis {
    bool ok = false;
    V3 point, dir;
    double r = 0;
  };
  std::function<Axis(double)> axis_at;
  double lo = 0, hi = M_PI;
  bool periodic = true;

  if (family == Witness::pair_cylinder_a) {
    // Axis parallel to d; in the plane orthogonal to d it is equidistant
    // from the common projection of p_i, p_j and from that of p_k.
    const Eigen::Vector2d P(fr.pi.dot(fr.e1), fr.pi.dot(fr.e2));
    const Eigen::Vector2d K(fr.pk.dot(fr.e1), fr.pk.dot(fr.e2));
    const double pk = (K - P).norm();
    if (pk <= 1e-12 * fr.a)
      throw Error(ErrorKind::empty_family, "third vertex lies on the pair's line");
    const Eigen::Vector2d m2 = 0.5 * (P + K), perp = Eigen::Vector2d(-(K - P)[1], (K - P)[0]) / pk;
    axis_at = [=](double t) {
      Axis ax;
      const Eigen::Vector2d c = m2 + t * perp;
      ax.ok = true;
      ax.point = c[0] * fr.e1 + c[1] * fr.e2 + fr.mid.dot(fr.d) * fr.d;
      ax.dir = fr.d;
      ax.r = (c - P).norm();
      return ax;
    };
    lo = -2 * s.max_edge();
    hi = 2 * s.max_edge();
    periodic = false;
  } else if (family == Witness::pair_cone_b) {
    // Lines through the midpoint: both pair vertices at (a/2)|sin θ|, θ the
    // angle to d. Contact with p_k is A cos 2θ + B sin 2θ = −C for each
    // azimuth φ of the ruling.
    const V3 w = fr.pk - fr.mid;
    axis_at = [=](double phi) {
      const V3 e = std::cos(phi) * fr.e1 + std::sin(phi) * fr.e2;
      const double wd = w.dot(fr.d), we = w.dot(e), a2 = fr.a * fr.a;
      const double A = 0.5 * (wd * wd - we * we) - a2 / 8, B = wd * we;
      const double C = a2 / 8 - w.squaredNorm() + 0.5 * (wd * wd + we * we);
      const double R = std::hypot(A, B);
      Axis best;
      if (R < 1e-300 || std::abs(C) > R) return best;
      const double base = std::atan2(B, A), delta = std::acos(std::clamp(-C / R, -1.0, 1.0));
      double best_rd = inf;
      for (double sgn : {1.0, -1.0}) {
        const double theta = 0.5 * (base + sgn * delta);
        Axis ax;
        ax.ok = true;
        ax.point = fr.mid;
        ax.dir = std::cos(theta) * fr.d + std::sin(theta) * e;
        ax.r = 0.5 * fr.a * std::abs(std::sin(theta));
        const double rd = std::max(ax.r, detail::line_distance(fr.pl, ax.point, ax.dir));
        if (rd < best_rd) best_rd = rd, best = ax;
      }
      return best;
    };
  } else {
    // Lines in the bisector plane at in-plane offset ρ from the midpoint:
    // r² = a²/4 + ρ², and contact with p_k fixes ρ.
    if (fr.a > 2 * radius_cap)
      throw Error(ErrorKind::empty_family, "pair spheres of the admissible radius are disjoint");
    const V3 w = fr.pk - fr.mid;
    const double x = w.dot(fr.d);
    axis_at = [=](double phi) {
      Axis ax;
      const V3 e = std::cos(phi) * fr.e1 + std::sin(phi) * fr.e2;
      const V3 nrm = -std::sin(phi) * fr.e1 + std::cos(phi) * fr.e2;
      const double y = w.dot(nrm);
      if (std::abs(y) < 1e-300) return ax;
      const double rho = (x * x + y * y - fr.a * fr.a / 4) / (2 * y);
      ax.ok = true;
      ax.point = fr.mid + rho * nrm;
      ax.dir = e;
      ax.r = std::sqrt(fr.a * fr.a / 4 + rho * rho);
      return ax;
    };
  }

  auto rd = [&](double t) {
    const Axis ax = axis_at(t);
    if (!ax.ok || !(ax.r <= radius_cap * (1 + 1e-12))) return inf;
    return std::max(ax.r, detail::line_distance(fr.pl, ax.point, ax.dir));
  };
  const auto [t, value] = detail::grid_golden(rd, lo, hi, periodic);
  if (!std::isfinite(value))
    throw Error(ErrorKind::empty_family, "no member of the family meets the third vertex");

  const Axis ax = axis_at(t);
  FamilyCandidate out;
  out.family = family;
  out.i = i, out.j = j, out.k = k;
  out.parameter = t;
  out.contact_radius = ax.r;
  out.cylinder.axis = AxisLine::through(Vector(ax.point), Vector(ax.dir));
  double radius = 0, residual = 0;
  for (int q = 0; q < 4; ++q) {
    const double dist = point_line_distance(s.vertex(q), out.cylinder.axis);
    radius = std::max(radius, dist);
    if (q == i || q == j || q == k) residual = std::max(residual, std::abs(dist - ax.r));
  }
  out.cylinder.radius = radius;
  out.contact_residual = residual;
  return out;
}

/// All non-empty families for the pair (i, j) and third vertex k whose
/// contact conditions hold within 1e−8 (relative to 1 + r).
inline std::vector<FamilyCandidate> case_ii_candidates(
    const Simplex& s, int i, int j, int k,
    double radius_cap = std::numeric_limits<double>::infinity()) {
  std::vector<FamilyCandidate> out;
  for (Witness w : {Witness::pair_cylinder_a, Witness::pair_cone_b, Witness::pair_bisector_c}) {
    try {
      auto c = case_ii_family(s, i, j, k, w, radius_cap);
      if (c.contact_residual < 1e-8 * (1 + c.contact_radius)) out.push_back(std::move(c));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::empty_family) throw;
    }
  }
  return out;
}

struct EnclosingOptions {
  SolverConfig solver;
  bool run_oracle = true;
  OracleOptions oracle;
};

struct EnclosingResult {
  Cylinder cylinder;
  Witness witness = Witness::circumscribing_4pts;
  std::vector<int> support;  // vertices on the surface within 1e−8 (1 + r)
  double oracle_gap = std::numeric_limits<double>::quiet_NaN();
  double oracle_r = std::numeric_limits<double>::quiet_NaN();
  double circumscribing_r = 0;
  int family_pair[2] = {-1, -1};
  int family_third = -1;
  std::vector<FamilyCandidate> candidates;  // every feasible family member examined
};

/// Smallest enclosing cylinder of a tetrahedron: the better of the smallest
/// circumscribing cylinder and the best member of the restricted
/// three-contact families over all (pair, third vertex) choices.
inline EnclosingResult smallest_enclosing_cylinder(const Simplex& s, const EnclosingOptions& opt = {}) {
  if (s.dim() != 3)
    throw Error(ErrorKind::dimension_mismatch, "the enclosing reduction is implemented in E^3 only");
  EnclosingResult out;
  const auto points = solve_all(s, opt.solver);
  const Cylinder circ = global_min(points);
  out.cylinder = circ;
  for (int q = 0; q < 4; ++q)
    out.cylinder.radius = std::max(out.cylinder.radius, point_line_distance(s.vertex(q), circ.axis));
  out.circumscribing_r = out.cylinder.radius;

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        for (auto& c : case_ii_candidates(s, i, j, k, out.circumscribing_r)) {
          if (c.cylinder.radius < out.cylinder.radius * (1 - 1e-12)) {
            out.cylinder = c.cylinder;
            out.witness = c.family;
            out.family_pair[0] = i, out.family_pair[1] = j;
            out.family_third = k;
          }
          out.candidates.push_back(std::move(c));
        }
      }
  for (int q = 0; q < 4; ++q)
    if (std::abs(point_line_distance(s.vertex(q), out.cylinder.axis) - out.cylinder.radius) <
        1e-8 * (1 + out.cylinder.radius))
      out.support.push_back(q);
  if (opt.run_oracle) {
    out.oracle_r = oracle_min_enclosing(s.vertices(), opt.oracle).r;
    out.oracle_gap = std::abs(out.cylinder.radius - out.oracle_r);
  }
  return out;
}

}  // namespace cylinders
