#ifndef SVMLASSO_SCREENING_HPP
#define SVMLASSO_SCREENING_HPP

// Safe sphere tests for the constrained Lasso and the simplex SVM.
//
// Both problems minimize the squared norm of a residual r(x) that ranges over
// a convex set, so any reference point with suboptimality eps satisfies
// ||r(x_ref) - r*|| <= sqrt(eps) =: rho, and r* is unique. At an optimum,
//   Lasso: every active column attains max_k |A_k^T r*|,
//   SVM:   every support column attains max_k  A_k^T r*   (r* = -A x*).
// Bounding each correlation over the ball around r(x_ref) gives
//   u_j = corr_j + ||A_j|| rho  >=  corr_j(r*)
//   L   = max_k (corr_k - ||A_k|| rho)  <=  max_k corr_k(r*)
// and column j can be discarded when u_j < L.

#include <cmath>
#include <optional>
#include <vector>

#include "problem.hpp"

namespace svmlasso {

struct ScreeningReport {
  std::vector<Index> kept;
  std::vector<Index> discarded;
  double radius_used = 0.0;
  double reference_objective = 0.0;
};

namespace detail {

inline ScreeningReport sphere_test(const Vector &corr, const Vector &norms, double rho,
                                   double reference_objective) {
  const double lower = (corr - rho * norms).maxCoeff();
  ScreeningReport report;
  report.radius_used = rho;
  report.reference_objective = reference_objective;
  for (Index j = 0; j < corr.size(); ++j) {
    if (corr(j) + rho * norms(j) < lower)
      report.discarded.push_back(j);
    else
      report.kept.push_back(j);
  }
  return report;
}

}  // namespace detail

/// subopt must upper-bound lasso_objective(inst, x_ref) - optimum.
inline ScreeningReport screen_lasso(const LassoInstance &inst, const L1Vector &x_ref, double subopt) {
  detail::require(subopt >= 0.0, "suboptimality bound must be nonnegative");
  detail::require_dims(x_ref.size() == inst.size(), "reference point length does not match column count");
  const Matrix &A = inst.matrix().entries();
  const Vector residual = inst.rhs() - A * x_ref.coords();
  const Vector corr = (A.transpose() * residual).cwiseAbs();
  return detail::sphere_test(corr, inst.matrix().column_norms(), std::sqrt(subopt),
                             residual.squaredNorm());
}

/// subopt must upper-bound svm_objective(inst, x_ref) - optimum. The SVM is
/// read as a non-negative Lasso with columns A_i + t and target t; the
/// default t = 0 is the plain form. Any t gives a sound test; for an instance
/// produced by lasso_to_svm, t = b makes the result agree index-by-index with
/// screen_lasso on the source.
inline ScreeningReport screen_svm(const SvmInstance &inst, const SimplexVector &x_ref, double subopt,
                                  const std::optional<Vector> &translation = std::nullopt) {
  detail::require(subopt >= 0.0, "suboptimality bound must be nonnegative");
  detail::require_dims(x_ref.size() == inst.size(), "reference point length does not match column count");
  const Matrix &A = inst.matrix.entries();
  const Vector residual = -(A * x_ref.coords());
  Vector corr = A.transpose() * residual;
  Vector norms;
  if (translation) {
    detail::require_dims(translation->size() == A.rows(), "translation length does not match matrix rows");
    corr.array() += translation->dot(residual);
    norms = (A.colwise() + *translation).colwise().norm().transpose();
  } else {
    norms = inst.matrix.column_norms();
  }
  return detail::sphere_test(corr, norms, std::sqrt(subopt), residual.squaredNorm());
}

/// Copy of the matrix restricted to `columns`, in order.
inline ProblemMatrix select_columns(const ProblemMatrix &A, const std::vector<Index> &columns) {
  detail::require(!columns.empty(), "cannot restrict to an empty column set");
  Matrix out(A.rows(), static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    detail::require_dims(columns[k] >= 0 && columns[k] < A.cols(), "column index out of range");
    out.col(static_cast<Index>(k)) = A.column(columns[k]);
  }
  return ProblemMatrix(std::move(out));
}

inline LassoInstance restrict_lasso(const LassoInstance &inst, const ScreeningReport &report) {
  return LassoInstance(select_columns(inst.matrix(), report.kept), inst.rhs(), inst.radius(), inst.origin());
}

inline SvmInstance restrict_svm(const SvmInstance &inst, const ScreeningReport &report) {
  return SvmInstance{select_columns(inst.matrix, report.kept), inst.origin};
}

/// Scatters a solution of a restricted instance back to n coordinates.
inline Vector scatter_solution(const Vector &restricted, const std::vector<Index> &kept, Index n) {
  detail::require_dims(restricted.size() == static_cast<Index>(kept.size()),
                       "restricted solution does not match kept set");
  Vector full = Vector::Zero(n);
  for (std::size_t k = 0; k < kept.size(); ++k) full(kept[k]) = restricted(static_cast<Index>(k));
  return full;
}

}  // namespace svmlasso

#endif  // SVMLASSO_SCREENING_HPP
