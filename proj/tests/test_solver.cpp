// Critical circumscribing cylinders, the special E^3 classes, the enclosing
// reduction and the command line.
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <fstream>
#include <sstream>

#include "cylinders/cli.hpp"
#include "cylinders/cylinders.hpp"
#include "test_support.hpp"

using namespace cylinders;
using namespace cylinders::testing;

namespace {

SolverConfig quick() {
  SolverConfig c;
  c.restarts = 600;
  return c;
}

// Points of the curve {g1 = 0} on the unit sphere, found by sign changes of
// the recovered-axis residual along meridians of two differently oriented
// polar frames, each refined by bisection.
double sampled_curve_min_radius(const Simplex& s, int meridians, int steps) {
  double best = std::numeric_limits<double>::infinity();
  const Eigen::Matrix3d frames[2] = {Eigen::Matrix3d::Identity(),
                                     Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).matrix()};
  for (const auto& frame : frames)
    for (int m = 0; m < meridians; ++m) {
      const double phi = M_PI * m / meridians;
      auto dir = [&](double th) {
        return Vector(frame * Eigen::Vector3d(std::sin(th) * std::cos(phi), std::sin(th) * std::sin(phi), std::cos(th)));
      };
      auto g = [&](double th) { return recover_axis(dir(th), s).g1_residual; };
      double prev = g(0);
      for (int k = 1; k <= steps; ++k) {
        const double a0 = M_PI * (k - 1) / steps, b0 = M_PI * k / steps, cur = g(b0);
        if ((prev < 0) != (cur < 0)) {
          double a = a0, b = b0, ga = prev;
          for (int it = 0; it < 60; ++it) {
            const double c = 0.5 * (a + b), gc = g(c);
            if ((gc < 0) == (ga < 0)) a = c, ga = gc;
            else b = c;
          }
          best = std::min(best, recover_axis(dir(0.5 * (a + b)), s).radius);
        }
        prev = cur;
      }
    }
  return best;
}

}  // namespace

// ---------------------------------------------------------------- solver

TEST(Solver, RegularTetrahedronHasNineDirections) {
  const Simplex s = regular_tetrahedron();
  const auto pts = solve_all(s);
  ASSERT_EQ(pts.size(), 9u);
  int edge = 0, cross = 0;
  for (const auto& p : pts) {
    bool is_edge = false;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        is_edge = is_edge || std::abs(std::abs(p.v.dot((s.vertex(j) - s.vertex(i)).normalized())) - 1) < 1e-9;
    if (is_edge) {
      ++edge;
      EXPECT_NE(p.kind, PointKind::local_min);
      EXPECT_GT(p.r, 1 / std::sqrt(2.0) + 1e-3);
    } else {
      ++cross;
      EXPECT_EQ(p.kind, PointKind::local_min);
      EXPECT_NEAR(p.r, 1 / std::sqrt(2.0), 1e-9);
    }
  }
  EXPECT_EQ(edge, 6);
  EXPECT_EQ(cross, 3);
}

TEST(Solver, RegularFourSimplexContainsTheCensusMinimum) {
  const RegularSimplex reg = regular_vertices(4);
  const auto pts = solve_all(reg.chart);
  Vector target(5);
  target << 0, 0.5, 0.5, -0.5, -0.5;
  const Vector v = canonical_direction(reg.to_chart(target));
  bool found = false;
  for (const auto& p : pts)
    if ((p.v - v).norm() < 1e-8) {
      found = true;
      EXPECT_NEAR(p.r * p.r, 49.0 / 80, 1e-10);
    }
  EXPECT_TRUE(found);
  EXPECT_NEAR(global_min(pts).radius, 7 * std::sqrt(5.0) / 20, 1e-10);
}

TEST(Solver, PointInvariantsOnRandomTetrahedra) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const Simplex s = random_simplex(rng, 3);
    const Formulation F(s);
    const auto pts = solve_all(s, quick());
    EXPECT_LE(pts.size(), 18u);
    for (const auto& p : pts) {
      EXPECT_NEAR(p.v.norm(), 1.0, 1e-12);
      EXPECT_LT(p.residual, 1e-10 * s.scale());
      EXPECT_LT(std::abs(F.g1(p.v)), 1e-10 * s.scale());
      EXPECT_LT(std::abs(F.g2(p.v)), 1e-12);
      EXPECT_NEAR(p.r, recover_axis(p.v, s).radius, 1e-10 * p.r);
      EXPECT_LT(std::abs(optimality_determinant_e3(F, p.v)), 1e-7 * s.scale());
    }
    // edge directions are feasible but in general not critical; they bound
    // the global minimum from above
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const Vector e = (s.vertex(j) - s.vertex(i)).normalized();
        EXPECT_LT(std::abs(recover_axis(e, s).g1_residual), 1e-12 * s.scale());
        EXPECT_LE(global_min(pts).radius, recover_axis(e, s).radius + 1e-12);
      }
  }
}

TEST(Solver, MinorsVanishOnRandomFourSimplices) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 3; ++t) {
    const Simplex s = random_simplex(rng, 4);
    const Formulation F(s);
    const auto pts = solve_all(s, quick());
    EXPECT_LE(pts.size(), bezout_bounds(4).general / 2);
    for (const auto& p : pts)
      for (double m : optimality_minors(F, p.v)) EXPECT_LT(std::abs(m), 1e-7 * s.scale());
  }
}

TEST(Solver, GlobalMinimumMatchesSampledCurve) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    const Simplex s = random_simplex(rng, 3);
    const double solver = global_min(solve_all(s)).radius;
    const double sampled = sampled_curve_min_radius(s, 600, 300);
    EXPECT_LE(solver, sampled + 1e-9);
    EXPECT_NEAR(solver, sampled, 1e-4 * sampled);
  }
}

TEST(Solver, DeterministicAndSorted) {
  std::mt19937_64 rng(24);
  const Simplex s = random_simplex(rng, 3);
  const auto a = solve_all(s, quick()), b = solve_all(s, quick());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].v == b[i].v);
    EXPECT_EQ(a[i].r, b[i].r);
    if (i > 0) EXPECT_LE(a[i - 1].r, a[i].r);
  }
  SolverConfig threaded = quick();
  threaded.threads = 2;
  const auto c = solve_all(s, threaded);
  ASSERT_EQ(a.size(), c.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i].v == c[i].v);
}

TEST(Solver, DedupMergesAntipodesAndIsIdempotent) {
  std::mt19937_64 rng(25);
  const Simplex s = random_simplex(rng, 3);
  auto pts = solve_all(s, quick());
  const std::size_t count = pts.size();
  std::vector<CriticalPoint> doubled = pts;
  for (auto p : pts) {
    p.v = -p.v;
    doubled.push_back(p);
  }
  EXPECT_EQ(dedup(doubled).size(), count);
  EXPECT_EQ(dedup(dedup(doubled)).size(), count);
  // two distinct edges stay distinct
  std::vector<CriticalPoint> two(pts.begin(), pts.begin() + 2);
  EXPECT_EQ(dedup(two).size(), 2u);
}

TEST(Solver, CurvatureMatchesFiniteDifferencesOnTheConstraintManifold) {
  std::mt19937_64 rng(26);
  const Simplex s = random_simplex(rng, 4);
  const Formulation F(s);
  const auto pts = solve_all(s, quick());
  int checked = 0;
  for (const auto& p : pts) {
    if (p.curvature.size() != 2) continue;
    // chart x -> v(x) on {g1 = 0, |v| = 1}: tangent step, then a normal
    // correction along the tangential part of grad g1 solved by Newton
    const Vector g = gradients(F, p.v).grad_g1;
    const Vector nrm = (g - g.dot(p.v) * p.v).normalized();
    Matrix basis(4, 3);
    basis << p.v, nrm, gaussian(rng, 4);
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = qr.householderQ();
    Matrix tangent = q.rightCols(2);
    auto chart = [&](const Vector& x) {
      double y = 0;
      Vector v = p.v;
      for (int it = 0; it < 50; ++it) {
        v = (p.v + tangent * x + y * nrm).normalized();
        const double step = F.g1(v) / gradients(F, v).grad_g1.dot(nrm);
        y -= step;
        if (std::abs(step) < 1e-16) break;
      }
      return (p.v + tangent * x + y * nrm).normalized();
    };
    auto r2 = [&](const Vector& x) { return std::pow(recover_axis(chart(x), s).radius, 2); };
    const double h = 1e-4;
    Eigen::Matrix2d hess;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Vector ei = h * Vector::Unit(2, i), ej = h * Vector::Unit(2, j);
        hess(i, j) = (r2(ei + ej) - r2(ei - ej) - r2(ej - ei) + r2(-ei - ej)) / (4 * h * h);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (hess + hess.transpose()));
    const double scale = std::max(1.0, std::abs(p.curvature[1]));
    EXPECT_NEAR(es.eigenvalues()[0], p.curvature[0], 1e-4 * scale);
    EXPECT_NEAR(es.eigenvalues()[1], p.curvature[1], 1e-4 * scale);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Solver, TwoDimensionalSimplexHasThreeEdgeDirections) {
  std::mt19937_64 rng(27);
  const Simplex s = random_simplex(rng, 2);
  const auto pts = solve_all(s);
  // in the plane, a circumscribing "cylinder" is a strip whose two lines
  // carry all three vertices: one per edge direction
  EXPECT_EQ(pts.size(), 3u);
  for (const auto& p : pts) EXPECT_EQ(p.kind, PointKind::local_min);
}

TEST(Solver, GlobalMinPointPrefersLexicographicTies) {
  CriticalPoint a, b;
  a.v = Eigen::Vector3d(0, 1, 0);
  b.v = Eigen::Vector3d(0, 0, 1);
  a.r = 1.0;
  b.r = 1.0 + 1e-13;
  a.u = b.u = Vector::Zero(3);
  EXPECT_TRUE(global_min_point({a, b}).v == b.v);
  EXPECT_THROW(global_min_point({}), Error);
}

// ---------------------------------------------------------------- special E^3

TEST(SpecialE3, Classification) {
  EXPECT_EQ(classify_e3(regular_tetrahedron()).tag, SimplexTag::equifacial);
  EXPECT_EQ(classify_e3(right_corner()).tag, SimplexTag::generic);
  EXPECT_EQ(classify_e3(box_simplex(Eigen::Vector3d(1, 1, 2))).tag, SimplexTag::equifacial);
  // mirror symmetric in x and in y, opposite edges of lengths 2 and 4:
  // facet areas √5, √5, 2√2, 2√2
  Matrix v(4, 3);
  v << -1, 0, 0, 1, 0, 0, 0, 2, 1, 0, -2, 1;
  const auto c = classify_e3(Simplex(v));
  EXPECT_EQ(c.tag, SimplexTag::two_pairs) << c.areas[0] << " " << c.areas[1] << " " << c.areas[2] << " " << c.areas[3];
  EXPECT_EQ(c.extrema_bound, 28);
}

TEST(SpecialE3, ClassificationInvariantUnderPermutationAndMotion) {
  std::mt19937_64 rng(31);
  for (const Simplex& s : {regular_tetrahedron(), right_corner(), box_simplex(Eigen::Vector3d(0.4, 1.3, 2.2))}) {
    const SimplexTag tag = classify_e3(s).tag;
    EXPECT_EQ(classify_e3(rigid_motion(rng, s)).tag, tag);
    Matrix p = s.vertices();
    p.row(0).swap(p.row(2));
    EXPECT_EQ(classify_e3(Simplex(p)).tag, tag);
  }
}

TEST(SpecialE3, BoxParams) {
  const BoxParams reg = box_params(regular_tetrahedron());
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(reg.w[k], 0.5, 1e-12);
  const BoxParams b = box_params(box_simplex(Eigen::Vector3d(1, 2, 3)));
  EXPECT_NEAR(b.w[0], 1, 1e-12);
  EXPECT_NEAR(b.w[1], 2, 1e-12);
  EXPECT_NEAR(b.w[2], 3, 1e-12);
  std::mt19937_64 rng(32);
  const Simplex moved = rigid_motion(rng, box_simplex(Eigen::Vector3d(0.7, 1.1, 2.5)));
  const BoxParams m = box_params(moved);
  for (int i = 0; i < 4; ++i) EXPECT_LT((m.vertex(i) - Eigen::Vector3d(moved.vertex(i))).norm(), 1e-9);
  EXPECT_THROW(box_params(right_corner()), Error);
}

TEST(SpecialE3, RhoProfile) {
  const Eigen::Vector3d half(0.5, 0.5, 0.5);
  EXPECT_NEAR(rho_profile(half, 0), 0.5, 1e-15);
  EXPECT_NEAR(rho_profile(half, 1), 0.5, 1e-15);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.2, 3);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector3d w(u(rng), u(rng), u(rng));
    const int m = 200;
    double lo = std::min(rho_profile(w, 0), rho_profile(w, 1));
    for (int k = 1; k < m; ++k) {
      const double a = rho_profile(w, double(k - 1) / m), b = rho_profile(w, double(k) / m),
                   c = rho_profile(w, double(k + 1) / m);
      EXPECT_LE(a - 2 * b + c, 1e-12);
      EXPECT_GE(b, lo - 1e-12);
    }
  }
}

TEST(SpecialE3, RhoProfileMatchesRecoveredRadius) {
  // the profile runs from the box z axis (z2 = 0) to the box y axis (z2 = 1),
  // the axes of pairs 2 and 1; in between, the axis (0, √z2, √(1 − z2))
  const Eigen::Vector3d w(0.8, 1.3, 1.9);
  const Simplex s = box_simplex(w);
  const auto cands = equifacial_candidates(s);
  for (const auto& c : cands) EXPECT_NEAR(c.g1_residual, 0.0, 1e-12);
  EXPECT_NEAR(std::pow(cands[2].cylinder.radius, 2), rho_profile(w, 0), 1e-12);
  EXPECT_NEAR(std::pow(cands[1].cylinder.radius, 2), rho_profile(w, 1), 1e-12);
  for (double z2 : {0.1, 0.35, 0.8}) {
    const Vector v = Eigen::Vector3d(0, std::sqrt(z2), std::sqrt(1 - z2));
    EXPECT_NEAR(std::pow(recover_axis(v, s).radius, 2), rho_profile(w, z2), 1e-12);
  }
}

TEST(SpecialE3, EquifacialMinimumMatchesGeneralSolver) {
  const Cylinder reg = equifacial_min_cylinder(regular_tetrahedron());
  EXPECT_NEAR(reg.radius, 1 / std::sqrt(2.0), 1e-12);
  const Simplex s = box_simplex(Eigen::Vector3d(1, 2, 3));
  const Cylinder c = equifacial_min_cylinder(s);
  EXPECT_NEAR(c.radius, global_min(solve_all(s)).radius, 1e-8 * c.radius);
  // axis orthogonal to both edges of one opposite pair
  bool orthogonal = false;
  for (const auto& e : kOppositeEdges) {
    const Vector a = (s.vertex(e[1]) - s.vertex(e[0])).normalized(), b = (s.vertex(e[3]) - s.vertex(e[2])).normalized();
    orthogonal = orthogonal || (std::abs(c.axis.v.dot(a)) < 1e-10 && std::abs(c.axis.v.dot(b)) < 1e-10);
  }
  EXPECT_TRUE(orthogonal);
  EXPECT_THROW(equifacial_min_cylinder(right_corner()), Error);
}

// ---------------------------------------------------------------- enclosing

TEST(ProjectionRadius, Examples) {
  // regular tetrahedron in its box frame: projections along a box axis form a unit square
  EXPECT_NEAR(projection_radius(regular_tetrahedron().vertices(), Eigen::Vector3d(1, 0, 0)),
              1 / std::sqrt(2.0), 1e-15);
  Matrix line(4, 3);
  line << 0, 0, 0, 1, 1, 1, 2, 2, 2, -1, -1, -1;
  EXPECT_NEAR(projection_radius(line, Eigen::Vector3d(1, 1, 1).normalized()), 0.0, 1e-14);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 3;
    const Simplex s = random_simplex(rng, n);
    const Vector v = gaussian(rng, n).normalized();
    const double r = projection_radius(s.vertices(), v);
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const Vector d = s.vertex(i) - s.vertex(j);
        EXPECT_GE(r, 0.5 * (d - d.dot(v) * v).norm() - 1e-12);
      }
    EXPECT_NEAR(projection_cylinder(s.vertices(), v).radius, r, 1e-12);
  }
}

TEST(Oracle, RegularSimplices) {
  EXPECT_NEAR(oracle_min_enclosing(regular_tetrahedron().vertices()).r, 1 / std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(oracle_min_enclosing(regular_vertices(4).chart.vertices()).r, 7 * std::sqrt(5.0) / 20, 1e-4);
}

TEST(Enclosing, RegularTetrahedronIsCircumscribingOptimal) {
  const EnclosingResult res = smallest_enclosing_cylinder(regular_tetrahedron());
  EXPECT_NEAR(res.cylinder.radius, 1 / std::sqrt(2.0), 1e-9);
  EXPECT_EQ(res.witness, Witness::circumscribing_4pts);
  EXPECT_EQ(res.support.size(), 4u);
  EXPECT_LT(res.oracle_gap, 1e-4);
}

TEST(Enclosing, NearFlatSimplexAgreesWithOracle) {
  for (double eps : {0.3, 0.1, 0.01}) {
    Matrix v(4, 3);
    v << 0, 0, 0, 1, 0, 0, 0, 1, 0, eps, eps, eps * 1e-3;
    const EnclosingResult res = smallest_enclosing_cylinder(Simplex(v));
    EXPECT_LT(res.oracle_gap, 1e-4 * res.oracle_r);
    EXPECT_LE(res.cylinder.radius, res.oracle_r + 1e-9);
    ::testing::Test::RecordProperty("witness_eps_" + std::to_string(eps), std::string(to_string(res.witness)));
  }
}

TEST(Enclosing, NeverWorseThanCircumscribingAndEncloses) {
  std::mt19937_64 rng(42);
  EnclosingOptions opt;
  opt.run_oracle = false;
  opt.solver = quick();
  for (int t = 0; t < 10; ++t) {
    const Simplex s = random_simplex(rng, 3);
    const EnclosingResult res = smallest_enclosing_cylinder(s, opt);
    EXPECT_LE(res.cylinder.radius, res.circumscribing_r);
    for (int i = 0; i < 4; ++i)
      EXPECT_LE(point_line_distance(s.vertex(i), res.cylinder.axis), res.cylinder.radius * (1 + 1e-9));
    EXPECT_GE(res.support.size(), 1u);
    for (int i : res.support)
      EXPECT_NEAR(point_line_distance(s.vertex(i), res.cylinder.axis), res.cylinder.radius, 1e-8);
  }
}

TEST(Enclosing, ScalingAndRigidMotion) {
  std::mt19937_64 rng(43);
  EnclosingOptions opt;
  opt.run_oracle = false;
  for (int t = 0; t < 3; ++t) {
    const Simplex s = random_simplex(rng, 3);
    const double r = smallest_enclosing_cylinder(s, opt).cylinder.radius;
    const double r_scaled = smallest_enclosing_cylinder(Simplex(2.5 * s.vertices()), opt).cylinder.radius;
    const double r_moved = smallest_enclosing_cylinder(rigid_motion(rng, s), opt).cylinder.radius;
    EXPECT_NEAR(r_scaled, 2.5 * r, 1e-10 * r);
    EXPECT_NEAR(r_moved, r, 1e-10 * r);
  }
}

TEST(Enclosing, OracleIsAnUpperBound) {
  std::mt19937_64 rng(44);
  EnclosingOptions opt;
  opt.run_oracle = false;
  OracleOptions small;
  small.samples = 2000;
  small.refine_iters = 0;
  for (int t = 0; t < 5; ++t) {
    const Simplex s = random_simplex(rng, 3);
    const double r = smallest_enclosing_cylinder(s, opt).cylinder.radius;
    EXPECT_GE(oracle_min_enclosing(s.vertices(), small).r, r - 1e-12);
  }
}

TEST(CaseII, ContactConditionsHold) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 20; ++t) {
    const Simplex s = random_simplex(rng, 3);
    for (const auto& c : case_ii_candidates(s, 0, 1, 2)) {
      for (int q : {c.i, c.j, c.k})
        EXPECT_NEAR(point_line_distance(s.vertex(q), c.cylinder.axis), c.contact_radius, 1e-8);
      EXPECT_LE(c.contact_radius, c.cylinder.radius + 1e-12);
    }
  }
}

TEST(CaseII, SymmetricPairGivesAxisInBisectorPlane) {
  // p0, p1 symmetric about x = 0; p2 on the bisector plane
  Matrix v(4, 3);
  v << -1, 0, 0, 1, 0, 0, 0, 2, 0.3, 0.2, -0.4, 1.5;
  const Simplex s(v);
  const FamilyCandidate c = case_ii_family(s, 0, 1, 2, Witness::pair_cylinder_a);
  EXPECT_NEAR(std::abs(c.cylinder.axis.v[0]), 1.0, 1e-12);
  // in the yz plane: P = (0, 0), K = (2, 0.3), L = (−0.4, 1.5); centers on
  // the bisector of P and K
  const Eigen::Vector2d P(0, 0), K(2, 0.3), L(-0.4, 1.5), m = 0.5 * (P + K);
  const Eigen::Vector2d perp = Eigen::Vector2d(-0.3, 2).normalized();
  // the distance to each point is convex along the bisector, so is their max
  auto rd = [&](double t) {
    const Eigen::Vector2d q = m + t * perp;
    return std::max((q - P).norm(), (q - L).norm());
  };
  double lo = -10, hi = 10;
  for (int it = 0; it < 300; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (rd(a) < rd(b)) hi = b;
    else lo = a;
  }
  const double best = rd(0.5 * (lo + hi));
  EXPECT_NEAR(c.cylinder.radius, best, 1e-10);
}

TEST(CaseII, BisectorFamilyEmptyWhenSpheresAreDisjoint) {
  Matrix v(4, 3);
  v << 0, 0, 0, 4, 0, 0, 1, 1, 0, 1, 0, 1;
  const Simplex s(v);
  try {
    case_ii_family(s, 0, 1, 2, Witness::pair_bisector_c, 1.5);  // |p0 − p1| = 4 > 2 · 1.5
    FAIL() << "expected an empty family";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_family);
  }
  EXPECT_NO_THROW(case_ii_family(s, 0, 1, 2, Witness::pair_bisector_c, 2.5));
  EXPECT_THROW(case_ii_family(s, 0, 0, 2, Witness::pair_cone_b), Error);
}

// ---------------------------------------------------------------- command line

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "cylinders");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CYLINDERS_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, RegularFour) {
  const CliRun r = run({"regular", "--dim", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("r: 0.7826237921"), std::string::npos);
  EXPECT_NE(r.out.find("closed_form: 7√5/20"), std::string::npos);
  EXPECT_NE(r.out.find("total: 150"), std::string::npos);
}

TEST(Cli, WeissbachThree) {
  const CliRun r = run({"weissbach", "--dim", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("26 solutions (18 + 8)"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithOne) {
  CliRun r = run({"circumscribe", data("degenerate.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("degenerate"), std::string::npos);
  EXPECT_NE(r.err.find("1e-10"), std::string::npos);
  r = run({"circumscribe", data("malformed.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
  r = run({"circumscribe", data("short_shape.json")});
  EXPECT_EQ(r.code, 1);
  r = run({"circumscribe", data("bad_row.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 6"), std::string::npos) << r.err;
  EXPECT_EQ(run({"enclose", data("regular_4simplex.json")}).code, 1);
  EXPECT_EQ(run({"regular", "--dim", "12"}).code, 1);
  EXPECT_EQ(run({"circumscribe", "missing.json"}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"regular", "--dim", "4", "--format", "xml"}).code, 1);
}

TEST(Cli, JsonAndTextCarryTheSamePayload) {
  const CliRun j = run({"circumscribe", data("right_corner.json"), "--format", "json", "--restarts", "300"});
  const CliRun t = run({"circumscribe", data("right_corner.json"), "--restarts", "300"});
  ASSERT_EQ(j.code, 0) << j.err;
  ASSERT_EQ(t.code, 0) << t.err;
  Json rep = Json::parse(j.out);
  rep.erase("timings");
  std::string text = t.out.substr(0, t.out.find("timings:"));
  EXPECT_EQ(render_text(rep), text);
  EXPECT_EQ(rep["config"]["rng_seed"], 42);
  EXPECT_EQ(rep["critical_points"].size(), rep["critical_point_count"].get<std::size_t>());
  // radii re-verifiable from the echoed input
  const SimplexDoc doc = parse_simplex(rep["input"].dump());
  for (const auto& p : rep["critical_points"]) {
    Vector v(3);
    for (int k = 0; k < 3; ++k) v[k] = p["v"][k].get<double>();
    EXPECT_NEAR(recover_axis(v, doc.simplex).radius, p["r"].get<double>(), 1e-12);
  }
}

TEST(Cli, DeterministicModuloTimings) {
  auto strip = [](std::string s) { return s.substr(0, s.find("timings:")); };
  const CliRun a = run({"enclose", data("near_flat.json"), "--restarts", "200", "--samples", "5000", "--seed", "7"});
  const CliRun b = run({"enclose", data("near_flat.json"), "--restarts", "200", "--samples", "5000", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_NE(a.out.find("witness:"), std::string::npos);
  EXPECT_NE(a.out.find("rng_seed: 7"), std::string::npos);
}

TEST(Cli, OracleAndOutputFile) {
  const std::string path = ::testing::TempDir() + "/oracle_report.json";
  const CliRun r = run({"oracle", data("regular_tetrahedron.json"), "--samples", "20000", "--output", path,
                     "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const Json rep = Json::parse(in);
  EXPECT_NEAR(rep["oracle"]["r"].get<double>(), 1 / std::sqrt(2.0), 1e-4);
}
