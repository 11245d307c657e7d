#ifndef SVMLASSO_REDUCTIONS_HPP
#define SVMLASSO_REDUCTIONS_HPP

// Translations between the SVM and Lasso forms, in both directions, plus the
// soft-margin dual construction and the improvement maps used to show that
// every Lasso optimum of a translated SVM instance lies in the simplex.

#include <cmath>
#include <optional>
#include <utility>

#include "problem.hpp"

namespace svmlasso {

enum class ReductionKind { lasso_to_svm, nonneg_to_svm, svm_to_lasso };

/// Data needed to carry solutions back across a reduction.
struct ReductionMeta {
  ReductionKind kind = ReductionKind::lasso_to_svm;
  std::optional<Vector> w;       // weakly-separating direction
  std::optional<double> sigma;   // its margin
  std::optional<double> bigD;    // strict upper bound on column norms
  std::optional<Vector> btilde;  // translation / new right-hand side
  Index source_n = 0;
};

/// Labeled points for the squared-loss soft-margin SVM.
class LabeledData {
 public:
  LabeledData(Matrix points, Vector labels, double C)
      : points_(std::move(points)), labels_(std::move(labels)), C_(C) {
    detail::require_dims(labels_.size() == points_.cols(),
                         "label count does not match number of points");
    if (points_.cols() < 1 || points_.rows() < 1) throw DataError("labeled data is empty");
    if (!points_.allFinite()) throw DataError("labeled points have non-finite entries");
    for (Index i = 0; i < labels_.size(); ++i)
      if (labels_(i) != 1.0 && labels_(i) != -1.0)
        throw DataError("label of point " + std::to_string(i + 1) + " is not +1 or -1");
    if (!(C_ > 0.0) || !std::isfinite(C_))
      throw PreconditionViolation("regularization parameter C must be positive");
  }

  const Matrix &points() const { return points_; }
  const Vector &labels() const { return labels_; }
  double C() const { return C_; }
  Index dim() const { return points_.rows(); }
  Index size() const { return points_.cols(); }

  /// Label-signed points Z_i = y_i X_i.
  Matrix signed_points() const { return points_ * labels_.asDiagonal(); }

 private:
  Matrix points_;
  Vector labels_;
  double C_;
};

/// Non-negative Lasso -> SVM: translate every column by -b.
inline SvmInstance nonneg_lasso_to_svm(const ProblemMatrix &A, const Vector &b) {
  detail::require_dims(b.size() == A.rows(), "rhs length does not match matrix rows");
  Matrix translated = A.entries().colwise() - b;
  return SvmInstance{ProblemMatrix(std::move(translated)), SvmOrigin::reduced_from_lasso};
}

/// Lasso -> SVM over 2n mirrored and translated columns (A | -A) - b 1^T.
inline std::pair<SvmInstance, ReductionMeta> lasso_to_svm(const LassoInstance &inst) {
  detail::require(inst.radius() == 1.0, "lasso_to_svm expects a radius-normalized instance");
  const Matrix &A = inst.matrix().entries();
  const Index n = A.cols();
  Matrix mirrored(A.rows(), 2 * n);
  mirrored.leftCols(n) = A;
  mirrored.rightCols(n) = -A;
  mirrored.colwise() -= inst.rhs();

  ReductionMeta meta;
  meta.kind = ReductionKind::lasso_to_svm;
  meta.btilde = inst.rhs();
  meta.source_n = n;
  return {SvmInstance{ProblemMatrix(std::move(mirrored)), SvmOrigin::reduced_from_lasso},
          std::move(meta)};
}

/// Writes x in barycentric coordinates of the 2n cross-polytope vertices.
/// Unused mass (1 - ||x||_1) is split evenly over the +e_1 / -e_1 pair.
inline SimplexVector barycentric_expand(const L1Vector &x) {
  const Index n = x.size();
  Vector out = Vector::Zero(2 * n);
  out.head(n) = x.coords().cwiseMax(0.0);
  out.tail(n) = (-x.coords()).cwiseMax(0.0);
  const double slack = std::max(0.0, 1.0 - x.l1_norm()) / 2.0;
  out(0) += slack;
  out(n) += slack;
  return SimplexVector(std::move(out));
}

/// Inverse of the barycentric parameterization: first block minus second.
inline L1Vector barycentric_contract(const SimplexVector &x) {
  detail::require_dims(x.size() % 2 == 0, "barycentric vector must have even length");
  const Index n = x.size() / 2;
  return L1Vector(x.coords().head(n) - x.coords().tail(n));
}

/// (1 + eta) times the largest column norm.
inline double estimate_bigD(const SvmInstance &inst, double eta = 0.01) {
  detail::require(eta > 0.0, "eta must be positive");
  const double max_norm = inst.matrix.column_norms().maxCoeff();
  if (max_norm == 0.0) throw PreconditionViolation("all-zero matrix has no meaningful norm bound");
  return (1.0 + eta) * max_norm;
}

/// SVM -> Lasso given a weakly-separating direction. The right-hand side is
/// b~ = -(w/||w||) D^2 / sigma and the columns are A_i + b~.
inline std::pair<LassoInstance, ReductionMeta> svm_to_lasso(const SvmInstance &inst,
                                                            const SeparatorReport &sep,
                                                            double bigD) {
  const Matrix &A = inst.matrix.entries();
  detail::require_dims(sep.direction.size() == A.rows(), "separator length does not match matrix rows");
  const double wnorm = sep.direction.norm();
  detail::require(wnorm > 0.0, "separator direction is zero");
  const double recomputed = (A.transpose() * sep.direction).minCoeff() / wnorm;
  const double sigma = std::min(sep.margin, recomputed);
  if (!(sigma > 0.0))
    throw PreconditionViolation("separator is not weakly separating (margin <= 0)");
  const double max_norm = inst.matrix.column_norms().maxCoeff();
  if (!(bigD > max_norm))
    throw PreconditionViolation("bigD must strictly exceed every column norm");

  const Vector unit = sep.direction / wnorm;
  Vector btilde = -unit * (bigD * bigD / sigma);
  Matrix translated = A.colwise() + btilde;

  ReductionMeta meta;
  meta.kind = ReductionKind::svm_to_lasso;
  meta.w = sep.direction;
  meta.sigma = sigma;
  meta.bigD = bigD;
  meta.btilde = btilde;
  meta.source_n = A.cols();
  return {LassoInstance(ProblemMatrix(std::move(translated)), std::move(btilde), 1.0,
                        LassoOrigin::reduced_from_svm),
          std::move(meta)};
}

namespace detail {

inline void require_translated(const LassoInstance &inst) {
  require(inst.origin() == LassoOrigin::reduced_from_svm,
          "operation is only valid on instances produced by svm_to_lasso");
}

}  // namespace detail

/// Replaces every negative coordinate by its absolute value (x + 2 delta with
/// delta_i = -x_i on the negative coordinates).
inline L1Vector flip_to_nonneg(const LassoInstance &inst, const L1Vector &x) {
  detail::require_translated(inst);
  detail::require_dims(x.size() == inst.size(), "vector length does not match column count");
  detail::require(x.coords().minCoeff() < 0.0, "vector has no negative entry; flipping is a no-op");
  return L1Vector(x.coords().cwiseAbs());
}

/// Scales a nonzero nonnegative x with ||x||_1 <= 1 onto the simplex.
inline SimplexVector scale_to_simplex(const LassoInstance &inst, const L1Vector &x) {
  detail::require_translated(inst);
  detail::require_dims(x.size() == inst.size(), "vector length does not match column count");
  detail::require(x.is_nonnegative(), "scale_to_simplex expects a nonnegative vector");
  const Vector clipped = x.coords().cwiseMax(0.0);
  const double mass = clipped.sum();
  detail::require(mass > 0.0, "scaling the zero vector onto the simplex is degenerate");
  return SimplexVector(clipped / mass);
}

/// Value of (A~x - b~)^T (-A~ delta) for filled-simplex points x, delta.
inline double inner_positivity_value(const LassoInstance &inst, const ReductionMeta &meta,
                                     const Vector &x, const Vector &delta) {
  detail::require(meta.kind == ReductionKind::svm_to_lasso,
                  "inner positivity is only defined for svm_to_lasso reductions");
  detail::require_dims(x.size() == inst.size() && delta.size() == inst.size(),
                       "vector length does not match column count");
  detail::require(is_filled_simplex(x) && is_filled_simplex(delta),
                  "x and delta must lie in the filled simplex");
  detail::require(delta.cwiseAbs().maxCoeff() > 0.0, "delta must be nonzero");
  const Matrix &A = inst.matrix().entries();
  return (A * x - inst.rhs()).dot(-(A * delta));
}

inline bool check_inner_positivity(const LassoInstance &inst, const ReductionMeta &meta,
                                   const Vector &x, const Vector &delta) {
  return inner_positivity_value(inst, meta, x, delta) > 0.0;
}

/// Every column lies strictly inside the cone around w with angle
/// arccos(sigma / D): cos(A_i, w) > sigma / D.
inline bool check_cone_separation(const SvmInstance &inst, const SeparatorReport &sep, double bigD) {
  const Matrix &A = inst.matrix.entries();
  const Vector unit = sep.direction.normalized();
  const Vector norms = inst.matrix.column_norms();
  const double bound = sep.margin / bigD;
  for (Index i = 0; i < A.cols(); ++i) {
    if (norms(i) == 0.0) return false;
    if (!(A.col(i).dot(unit) / norms(i) > bound)) return false;
  }
  return true;
}

/// Simplex form of the squared-loss soft-margin SVM dual:
/// A = [Z ; I_n / sqrt(C)] with Z_i = y_i X_i.
inline SvmInstance soft_margin_dual(const LabeledData &data) {
  const Index d = data.dim();
  const Index n = data.size();
  Matrix A = Matrix::Zero(d + n, n);
  A.topRows(d) = data.signed_points();
  A.bottomRows(n).diagonal().setConstant(1.0 / std::sqrt(data.C()));
  return SvmInstance{ProblemMatrix(std::move(A)), SvmOrigin::soft_margin_dual};
}

/// Primal point of the soft-margin SVM recovered from dual weights alpha.
struct SoftMarginPrimal {
  Vector w;
  Vector xi;
  double rho = 0.0;
  double value = 0.0;  // 1/2 ||w||^2 - rho + C/2 sum xi^2
};

inline SoftMarginPrimal soft_margin_primal(const LabeledData &data, const SimplexVector &alpha) {
  detail::require_dims(alpha.size() == data.size(), "dual weights do not match number of points");
  const Matrix Z = data.signed_points();
  SoftMarginPrimal p;
  p.w = Z * alpha.coords();
  p.xi = alpha.coords() / data.C();
  p.rho = ((Z.transpose() * p.w) + p.xi).minCoeff();
  p.value = 0.5 * p.w.squaredNorm() - p.rho + 0.5 * data.C() * p.xi.squaredNorm();
  return p;
}

/// The direction (0_d ; 1_n / sqrt(n)), which separates every soft-margin
/// dual instance with margin 1 / sqrt(n C).
inline SeparatorReport trivial_separator(Index n, double C, Index d) {
  detail::require(n >= 1 && d >= 0, "trivial separator needs n >= 1");
  detail::require(C > 0.0, "regularization parameter C must be positive");
  Vector w = Vector::Zero(d + n);
  w.tail(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  return {std::move(w), 1.0 / std::sqrt(static_cast<double>(n) * C)};
}

/// Appends a constant feature t to every point, folding the offset into w.
inline LabeledData augment_offset(const LabeledData &data, double t = 1.0) {
  detail::require(t > 0.0, "offset feature value must be positive");
  Matrix points(data.dim() + 1, data.size());
  points.topRows(data.dim()) = data.points();
  points.row(data.dim()).setConstant(t);
  return LabeledData(std::move(points), data.labels(), data.C());
}

}  // namespace svmlasso

#endif  // SVMLASSO_REDUCTIONS_HPP
