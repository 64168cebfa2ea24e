#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "cylinders/combinatorics.hpp"
#include "cylinders/error.hpp"
#include "cylinders/geometry.hpp"
#include "cylinders/linalg.hpp"

namespace cylinders {

/// Objective and constraints of the circumscribing program for one simplex.
///
/// With q_i = p_i − p_{n+1} the rows of M, s_i = |q_i|² and
/// b_i(v) = v²s_i − (v·q_i)², put w = M⁻¹b. Then
///   f  = |w|²/4      (equals r² on the unit sphere)
///   g1 = (w·v)/2     (equals u·v on the unit sphere)
///   g2 = v² − 1.
/// Coordinates may be divided by `unit` first; the solver uses this to work
/// on a simplex of size one.
template <int N>
class BasicFormulation {
 public:
  using Vec = VecN<N>;
  using Mat = MatN<N>;
  using Grad3 = Eigen::Matrix<double, N, 3>;

  struct Value {
    double f = 0, g1 = 0, g2 = 0;
    Vec grad_f, grad_g1, grad_g2;
    Mat hess_f, hess_g1, hess_g2;  // filled only when requested
    Vec w;
  };

  BasicFormulation() = default;

  explicit BasicFormulation(const Simplex& s, double unit = 1.0) : unit_(unit) {
    const int n = s.dim();
    if (N != Eigen::Dynamic && n != N)
      throw Error(ErrorKind::dimension_mismatch, "formulation dimension does not match simplex");
    m_ = s.translated() / unit;
    lu_ = Eigen::PartialPivLU<Mat>(m_);
    minv_ = lu_.inverse();
    sq_ = m_.rowwise().squaredNorm();
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  double unit() const { return unit_; }
  const Mat& m() const { return m_; }
  const Mat& m_inverse() const { return minv_; }

  Vec w(const Vec& v) const {
    const Vec mv = m_ * v;
    const Vec b = v.squaredNorm() * sq_ - mv.cwiseProduct(mv);
    return minv_ * b;
  }

  double f(const Vec& v) const { return 0.25 * w(v).squaredNorm(); }
  double g1(const Vec& v) const { return 0.5 * w(v).dot(v); }
  double g2(const Vec& v) const { return v.squaredNorm() - 1.0; }

  Value evaluate(const Vec& v, bool hessians = false) const {
    const int n = dim();
    Value out;
    const Vec mv = m_ * v;
    const double v2 = v.squaredNorm();
    const Vec b = v2 * sq_ - mv.cwiseProduct(mv);
    out.w = minv_ * b;
    out.f = 0.25 * out.w.squaredNorm();
    out.g1 = 0.5 * out.w.dot(v);
    out.g2 = v2 - 1.0;
    // db/dv = 2(s vᵀ − diag(Mv) M)
    const Mat db = 2.0 * (sq_ * v.transpose() - mv.asDiagonal() * m_);
    const Mat jw = minv_ * db;
    out.grad_f = 0.5 * jw.transpose() * out.w;
    out.grad_g1 = 0.5 * (jw.transpose() * v + out.w);
    out.grad_g2 = 2.0 * v;
    if (hessians) {
      const Mat id = Mat::Identity(n, n);
      // Σ_k c_k ∇²w_k with c = M⁻ᵀ x equals 2(c·s)I − 2Mᵀdiag(c)M.
      auto curvature = [&](const Vec& c) -> Mat {
        return 2.0 * c.dot(sq_) * id - 2.0 * m_.transpose() * c.asDiagonal() * m_;
      };
      const Vec c = minv_.transpose() * out.w;
      const Vec d = minv_.transpose() * v;
      out.hess_f = 0.5 * (jw.transpose() * jw + curvature(c));
      out.hess_g1 = 0.5 * (curvature(d) + jw + jw.transpose());
      out.hess_g2 = 2.0 * id;
    }
    return out;
  }

  /// n x 3 matrix with columns (−∇f, ∇g1, ∇g2).
  Grad3 gradient_matrix(const Vec& v) const {
    const Value val = evaluate(v);
    Grad3 g(dim(), 3);
    g.col(0) = -val.grad_f;
    g.col(1) = val.grad_g1;
    g.col(2) = val.grad_g2;
    return g;
  }

 private:
  double unit_ = 1.0;
  Mat m_;
  Mat minv_;
  Eigen::PartialPivLU<Mat> lu_;
  Vec sq_;
};

using Formulation = BasicFormulation<Eigen::Dynamic>;

inline Formulation build(const Simplex& s) { return Formulation(s); }

struct Gradients {
  Vector grad_f, grad_g1, grad_g2;
};

inline Gradients gradients(const Formulation& F, const Vector& v) {
  auto val = F.evaluate(v);
  return {val.grad_f, val.grad_g1, val.grad_g2};
}

inline double optimality_determinant_e3(const Formulation& F, const Vector& v) {
  if (F.dim() != 3) throw Error(ErrorKind::dimension_mismatch, "determinant test needs n = 3");
  return Matrix(F.gradient_matrix(v)).determinant();
}

/// All C(n,3) 3x3 minors of the gradient matrix, rows taken in lexicographic order.
inline std::vector<double> optimality_minors(const Formulation& F, const Vector& v) {
  const int n = F.dim();
  if (n < 3) throw Error(ErrorKind::dimension_mismatch, "3x3 minors need n >= 3");
  const Matrix g = F.gradient_matrix(v);
  std::vector<double> out;
  out.reserve(binomial(n, 3));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Eigen::Matrix3d sub;
        sub.row(0) = g.row(i);
        sub.row(1) = g.row(j);
        sub.row(2) = g.row(k);
        out.push_back(sub.determinant());
      }
  return out;
}

/// Coefficients of g1 after the change of variables v = Σ t_i q_i.
struct TCubicCoefficients {
  struct Triple {
    int i, j, k;
    double value;
  };
  Matrix alpha;  // alpha(i,j), zero diagonal
  std::vector<Triple> beta;

  /// ½ Σ_{i≠j} α_ij t_i² t_j + Σ_{i<j<k} β_ijk t_i t_j t_k
  double value(const Vector& t) const {
    double acc = 0;
    const auto n = alpha.rows();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) acc += 0.5 * alpha(i, j) * t[i] * t[i] * t[j];
    for (const auto& b : beta) acc += b.value * t[b.i] * t[b.j] * t[b.k];
    return acc;
  }
};

inline TCubicCoefficients t_cubic(const Simplex& s) {
  const Matrix g = s.translated() * s.translated().transpose();
  const int n = s.dim();
  TCubicCoefficients out;
  out.alpha = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.alpha(i, j) = g(i, i) * g(j, j) - g(i, j) * g(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double b = (g(i, j) * g(k, k) - g(i, k) * g(k, j)) +
                         (g(i, k) * g(j, j) - g(i, j) * g(j, k)) +
                         (g(j, k) * g(i, i) - g(j, i) * g(i, k));
        out.beta.push_back({i, j, k, b});
      }
  return out;
}

}  // namespace cylinders
