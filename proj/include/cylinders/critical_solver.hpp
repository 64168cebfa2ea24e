#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

#include "cylinders/error.hpp"
#include "cylinders/formulation.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/linalg.hpp"

namespace cylinders {

enum class PointKind { local_min, local_max, saddle, unclassified };

constexpr std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::local_min: return "local_min";
    case PointKind::local_max: return "local_max";
    case PointKind::saddle: return "saddle";
    case PointKind::unclassified: return "unclassified";
  }
  return "unclassified";
}

struct SolverConfig {
  int restarts = -1;  // negative: 200 * 3^min(n,5)
  std::uint64_t rng_seed = 42;
  int newton_max_iter = 60;
  double newton_tol = 1e-12;  // max-norm of the Lagrange system on the unit-size simplex
  double dedup_angle_tol = 1e-7;
  int threads = 1;

  int restarts_for(int n) const {
    if (restarts >= 0) return restarts;
    int r = 200;
    for (int i = 0; i < std::min(n, 5); ++i) r *= 3;
    return r;
  }
};

struct CriticalPoint {
  Vector v;  // canonical unit direction
  Vector u;  // moment point of the axis, input coordinates
  double r = 0;
  double lambda1 = 0, lambda2 = 0;
  double residual = 0;  // max-norm of the Lagrange system, input units
  PointKind kind = PointKind::unclassified;
  int basin_count = 0;
  double direction_error = 0;  // Newton error estimate; large at singular solutions
  std::vector<double> curvature;  // projected Lagrangian Hessian eigenvalues

  Cylinder cylinder() const { return {AxisLine{u, v}, r}; }
};

struct PolishResult {
  bool converged = false;
  int iterations = 0;
  double first_step = 0;  // norm of the first Newton step in v
  double residual = 0;
  double direction_error = 0;  // estimated distance to the exact solution
  Vector v;
};

namespace detail {

inline bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

template <int N>
class Newton {
 public:
  static constexpr int K = dim_plus(N, 2);
  using F = BasicFormulation<N>;
  using Vec = typename F::Vec;
  using Mat = typename F::Mat;
  using VecK = Eigen::Matrix<double, K, 1>;
  using MatK = Eigen::Matrix<double, K, K>;

  struct State {
    Vec v;
    double l1 = 0, l2 = 0;
  };

  explicit Newton(const F& form) : form_(form), n_(form.dim()) {}

  // Least-squares multipliers for ∇f ≈ λ1∇g1 + λ2∇g2.
  State seed(const Vec& v0) const {
    State s;
    s.v = v0.normalized();
    const auto val = form_.evaluate(s.v);
    Eigen::Matrix<double, N, 2> a;
    a.resize(n_, 2);
    a.col(0) = val.grad_g1;
    a.col(1) = val.grad_g2;
    const Eigen::Vector2d lam = a.completeOrthogonalDecomposition().solve(val.grad_f);
    s.l1 = lam[0];
    s.l2 = lam[1];
    return s;
  }

  VecK residual(const State& s, typename F::Value* keep = nullptr, bool hessians = false) const {
    auto val = form_.evaluate(s.v, hessians);
    VecK r;
    r.resize(n_ + 2);
    r.head(n_) = val.grad_f - s.l1 * val.grad_g1 - s.l2 * val.grad_g2;
    r[n_] = val.g1;
    r[n_ + 1] = val.g2;
    if (keep) *keep = std::move(val);
    return r;
  }

  MatK jacobian(const State& s, const typename F::Value& val) const {
    MatK j = MatK::Zero(n_ + 2, n_ + 2);
    j.topLeftCorner(n_, n_) = val.hess_f - s.l1 * val.hess_g1 - s.l2 * val.hess_g2;
    j.col(n_).head(n_) = -val.grad_g1;
    j.col(n_ + 1).head(n_) = -val.grad_g2;
    j.row(n_).head(n_) = val.grad_g1.transpose();
    j.row(n_ + 1).head(n_) = val.grad_g2.transpose();
    return j;
  }

  VecK step(const State& s, const typename F::Value& val, const VecK& r) const {
    const MatK j = jacobian(s, val);
    Eigen::PartialPivLU<MatK> lu(j);
    VecK dx = lu.solve(-r);
    // Minimum-norm step where the system is singular, e.g. where ∇g1
    // vanishes and λ1 is free.
    if (!dx.allFinite() || (j * dx + r).norm() > 1e-8 * (1 + r.norm()))
      dx = j.completeOrthogonalDecomposition().solve(-r);
    return dx;
  }

  /// Damped Newton. Once the residual is below `tol` a few more cheap
  /// iterations are taken: at singular solutions convergence is only linear
  /// and the direction is still moving.
  PolishResult run(State& s, int max_iter, double tol) const {
    constexpr int kPolish = 30;
    PolishResult out;
    typename F::Value val;
    VecK r = residual(s, &val, true);
    double norm2 = r.squaredNorm();
    int extra = 0;
    for (int it = 0; it < max_iter + kPolish; ++it) {
      const bool below = r.template lpNorm<Eigen::Infinity>() < tol;
      if (below) {
        out.converged = true;
        if (++extra > kPolish) break;
      } else if (it >= max_iter) {
        break;
      }
      const VecK dx = step(s, val, r);
      if (it == 0) out.first_step = dx.head(n_).norm();
      double t = 1.0;
      bool accepted = false;
      const int halvings = below ? 2 : 40;
      for (int half = 0; half <= halvings; ++half, t *= 0.5) {
        State trial{s.v + t * dx.head(n_), s.l1 + t * dx[n_], s.l2 + t * dx[n_ + 1]};
        VecK tr = residual(trial);
        const double tn = tr.squaredNorm();
        if (std::isfinite(tn) && tn < norm2) {
          s = trial;
          r = residual(s, &val, true);
          norm2 = tn;
          accepted = true;
          break;
        }
      }
      out.iterations = it + 1;
      if (!accepted) break;
    }
    out.residual = r.template lpNorm<Eigen::Infinity>();
    out.converged = out.residual < tol;
    if (out.converged) out.direction_error = 4.0 * step(s, val, r).head(n_).norm();
    out.v = Vector(s.v);
    return out;
  }

 private:
  const F& form_;
  int n_;
};

struct Curvature {
  PointKind kind = PointKind::unclassified;
  std::vector<double> eigenvalues;
};

inline PointKind kind_from_signs(const std::vector<double>& ev, double tol) {
  bool pos = false, neg = false;
  for (double e : ev) {
    if (std::abs(e) <= tol) return PointKind::unclassified;
    (e > 0 ? pos : neg) = true;
  }
  if (pos && neg) return PointKind::saddle;
  return neg ? PointKind::local_max : PointKind::local_min;
}

// Second-order test on {g1 = 0, g2 = 0}. Where ∇g1 is tangentially zero in
// E^3 the feasible set near v is a pair of curves; the second derivative of
// f along a curve with unit tangent x is xᵀ(H_f − λ2 H_g2)x, independent of λ1.
template <int N>
Curvature classify_point(const BasicFormulation<N>& form, const VecN<N>& v, double l1,
                         double l2) {
  const int n = form.dim();
  const auto val = form.evaluate(v, true);
  const MatN<N> h = val.hess_f - l1 * val.hess_g1 - l2 * val.hess_g2;
  const double tol = 1e-6 * std::max(1.0, h.norm());
  const VecN<N> vn = v.normalized();
  const VecN<N> g1t = val.grad_g1 - val.grad_g1.dot(vn) * vn;
  const double g1scale = std::max(1.0, val.hess_g1.norm());
  const auto tangent = complement_basis<N>(vn);  // n x (n-1)
  Curvature out;
  if (g1t.norm() > 1e-7 * g1scale) {
    if (n == 2) {
      out.kind = PointKind::local_min;  // feasible set is discrete
      return out;
    }
    // Tangent space: the part of v⊥ orthogonal to ∇g1.
    const Vector a = Matrix(tangent).transpose() * Vector(g1t);
    const auto inner = complement_basis<Eigen::Dynamic>(Vector(a.normalized()));
    const Matrix z = Matrix(tangent) * inner;
    const Matrix reduced = z.transpose() * Matrix(h) * z;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (reduced + reduced.transpose()));
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + (n - 2));
    out.kind = kind_from_signs(out.eigenvalues, tol);
    return out;
  }
  if (n != 3) return out;
  const Matrix z = tangent;
  const Matrix q = z.transpose() * Matrix(val.hess_g1) * z;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (q + q.transpose()));
  const double m1 = es.eigenvalues()[0], m2 = es.eigenvalues()[1];
  const double qtol = 1e-6 * g1scale;
  if (std::abs(m1) <= qtol || std::abs(m2) <= qtol) return out;
  if (m1 > 0 || m2 < 0) {
    out.kind = PointKind::local_min;  // isolated feasible point
    return out;
  }
  const Matrix hf = Matrix(val.hess_f - l2 * val.hess_g2);
  for (double sign : {1.0, -1.0}) {
    Vector x = std::sqrt(m2) * es.eigenvectors().col(0) + sign * std::sqrt(-m1) * es.eigenvectors().col(1);
    x = z * x.normalized();
    out.eigenvalues.push_back(x.dot(hf * x));
  }
  out.kind = kind_from_signs(out.eigenvalues, tol);
  return out;
}

template <int N>
class Solver {
 public:
  using F = BasicFormulation<N>;
  using Vec = VecN<N>;

  Solver(const Simplex& s, const SolverConfig& cfg)
      : simplex_(s), cfg_(cfg), unit_(s.max_norm()), form_(s, unit_), lu_(s.translated()) {}

  struct Raw {
    bool ok = false;
    CriticalPoint point;
  };

  Raw finish(const typename Newton<N>::State& st, const PolishResult& res) const {
    Raw out;
    const int n = simplex_.dim();
    const auto val = form_.evaluate(st.v);
    if (!(std::abs(val.g1) < 1e-10) || !(std::abs(val.g2) < 1e-12)) return out;
    const Vector v = Vector(st.v).normalized();
    const AxisRecovery rec = recover_axis_with(lu_, simplex_, v);
    CriticalPoint p;
    p.v = canonical_direction(v);
    const bool flipped = p.v.dot(v) < 0;
    p.u = rec.line.u;
    p.r = rec.radius;
    if (equidistance_error(simplex_, p.cylinder()) > 1e-9) return out;
    p.lambda1 = (flipped ? -st.l1 : st.l1) * unit_;
    p.lambda2 = st.l2 * unit_ * unit_;
    const Eigen::VectorXd stat = (val.grad_f - st.l1 * val.grad_g1 - st.l2 * val.grad_g2);
    p.residual = std::max({unit_ * unit_ * stat.template lpNorm<Eigen::Infinity>(),
                           unit_ * std::abs(val.g1), std::abs(val.g2)});
    (void)n;
    p.direction_error = res.direction_error;
    p.basin_count = 1;
    out.ok = true;
    out.point = std::move(p);
    return out;
  }

  Raw solve_from(const Vec& start) const {
    Newton<N> newton(form_);
    auto st = newton.seed(start);
    const PolishResult res = newton.run(st, cfg_.newton_max_iter, cfg_.newton_tol);
    if (!res.converged) return {};
    return finish(st, res);
  }

  std::vector<Vec> starts() const {
    const int n = simplex_.dim();
    std::vector<Vec> out;
    const Matrix& vtx = simplex_.vertices();
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) out.push_back(Vec((vtx.row(j) - vtx.row(i)).transpose()));
    std::mt19937_64 rng(cfg_.rng_seed);
    std::normal_distribution<double> gauss;
    const int extra = cfg_.restarts_for(n);
    for (int k = 0; k < extra; ++k) {
      Vec v;
      v.resize(n);
      for (int i = 0; i < n; ++i) v[i] = gauss(rng);
      out.push_back(v);
    }
    return out;
  }

  Curvature classify(const CriticalPoint& p) const {
    const Vec v = p.v;
    Curvature c = classify_point<N>(form_, v, p.lambda1 / unit_, p.lambda2 / (unit_ * unit_));
    for (double& e : c.eigenvalues) e *= unit_ * unit_;
    return c;
  }

  const F& formulation() const { return form_; }
  double unit() const { return unit_; }

 private:
  const Simplex& simplex_;
  SolverConfig cfg_;
  double unit_;
  F form_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace detail

using detail::Curvature;

/// Groups points whose canonical directions are within `tol` radians (widened
/// by the Newton error estimates), keeping the smallest residual and
/// accumulating basin counts; sorted by (r, v).
inline std::vector<CriticalPoint> dedup(std::vector<CriticalPoint> points, double tol = 1e-7) {
  std::vector<CriticalPoint> out;
  for (auto& p : points) {
    const Vector v = canonical_direction(p.v);
    bool merged = false;
    for (auto& q : out) {
      const double angle = std::min((v - q.v).norm(), (v + q.v).norm());
      if (angle < std::max(tol, p.direction_error + q.direction_error)) {
        const int count = q.basin_count + p.basin_count;
        if (p.residual < q.residual) {
          q = p;
          q.v = v;
        }
        q.basin_count = count;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(p);
      out.back().v = v;
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.r != b.r) return a.r < b.r;
    return detail::lex_less(a.v, b.v);
  });
  return out;
}

template <int N>
std::vector<CriticalPoint> solve_all_n(const Simplex& s, const SolverConfig& cfg) {
  detail::Solver<N> solver(s, cfg);
  const auto starts = solver.starts();
  std::vector<typename detail::Solver<N>::Raw> raw(starts.size());
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) raw[i] = solver.solve_from(starts[i]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < starts.size(); i += threads) raw[i] = solver.solve_from(starts[i]);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<CriticalPoint> found;
  for (auto& r : raw)
    if (r.ok) found.push_back(std::move(r.point));
  if (found.empty())
    throw Error(ErrorKind::no_critical_point_found,
                "Newton iteration did not converge from any start");
  auto points = dedup(std::move(found), cfg.dedup_angle_tol);
  for (auto& p : points) {
    auto c = solver.classify(p);
    p.kind = c.kind;
    p.curvature = std::move(c.eigenvalues);
  }
  return points;
}

/// Real critical directions of the circumscribing program: edge-direction
/// seeds plus random restarts, Newton-polished, deduplicated and classified.
inline std::vector<CriticalPoint> solve_all(const Simplex& s, const SolverConfig& cfg = {}) {
  return dispatch_dimension(s.dim(), [&](auto nc) { return solve_all_n<decltype(nc)::value>(s, cfg); });
}

inline Curvature classify(const Simplex& s, const CriticalPoint& p) {
  return dispatch_dimension(s.dim(), [&](auto nc) {
    detail::Solver<decltype(nc)::value> solver(s, SolverConfig{});
    return solver.classify(p);
  });
}

/// Newton polish from direction v (multipliers seeded by least squares).
inline PolishResult polish(const Simplex& s, const Vector& v, int max_iter = 60,
                           double tol = 1e-12) {
  return dispatch_dimension(s.dim(), [&](auto nc) {
    constexpr int N = decltype(nc)::value;
    BasicFormulation<N> form(s, s.max_norm());
    detail::Newton<N> newton(form);
    auto st = newton.seed(VecN<N>(v));
    return newton.run(st, max_iter, tol);
  });
}

inline const CriticalPoint& global_min_point(const std::vector<CriticalPoint>& points) {
  if (points.empty()) throw Error(ErrorKind::empty_input, "no critical points to minimize over");
  double rmin = points.front().r;
  for (const auto& p : points) rmin = std::min(rmin, p.r);
  const CriticalPoint* best = nullptr;
  for (const auto& p : points) {
    if (p.r > rmin * (1 + 1e-10)) continue;
    if (!best || detail::lex_less(p.v, best->v)) best = &p;
  }
  return *best;
}

inline Cylinder global_min(const std::vector<CriticalPoint>& points) {
  return global_min_point(points).cylinder();
}

}  // namespace cylinders
