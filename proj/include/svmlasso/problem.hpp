#ifndef SVMLASSO_PROBLEM_HPP
#define SVMLASSO_PROBLEM_HPP

// Problem forms shared by every module:
//   SVM            min_{x in simplex}  ||A x||^2
//   Lasso          min_{||x||_1 <= 1}  ||A x - b||^2
// together with the feasible-point types, objective and margin evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "errors.hpp"

namespace svmlasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kFeasibilityTol = 1e-10;

/// Dense d x n matrix whose columns are the datapoints (or dictionary atoms).
class ProblemMatrix {
 public:
  explicit ProblemMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1)
      throw DataError("problem matrix must have at least one row and one column");
    if (!entries_.allFinite()) throw DataError("problem matrix has non-finite entries");
  }

  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  const Matrix &entries() const { return entries_; }
  auto column(Index i) const { return entries_.col(i); }

  Vector column_norms() const { return entries_.colwise().norm().transpose(); }

 private:
  Matrix entries_;
};

enum class SvmOrigin { raw, soft_margin_dual, reduced_from_lasso };
enum class LassoOrigin { raw, reduced_from_svm };

/// Simplex-constrained classifier instance; columns are already label-signed.
struct SvmInstance {
  ProblemMatrix matrix;
  SvmOrigin origin = SvmOrigin::raw;

  Index dim() const { return matrix.rows(); }
  Index size() const { return matrix.cols(); }
};

/// l1-constrained least squares instance with radius `radius`.
class LassoInstance {
 public:
  LassoInstance(ProblemMatrix matrix, Vector rhs, double radius = 1.0,
                LassoOrigin origin = LassoOrigin::raw)
      : matrix_(std::move(matrix)), rhs_(std::move(rhs)), radius_(radius), origin_(origin) {
    detail::require_dims(rhs_.size() == matrix_.rows(),
                         "rhs length " + std::to_string(rhs_.size()) +
                             " does not match matrix rows " + std::to_string(matrix_.rows()));
    if (!rhs_.allFinite()) throw DataError("rhs has non-finite entries");
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
      throw PreconditionViolation("lasso radius must be positive and finite");
  }

  const ProblemMatrix &matrix() const { return matrix_; }
  const Vector &rhs() const { return rhs_; }
  double radius() const { return radius_; }
  LassoOrigin origin() const { return origin_; }
  Index dim() const { return matrix_.rows(); }
  Index size() const { return matrix_.cols(); }

 private:
  ProblemMatrix matrix_;
  Vector rhs_;
  double radius_;
  LassoOrigin origin_;
};

// Feasibility predicates for the simplex, the filled simplex and the l1 ball.

inline bool is_simplex(const Vector &v, double tol = kFeasibilityTol) {
  return v.size() > 0 && v.minCoeff() >= -tol && std::abs(v.sum() - 1.0) <= tol;
}

inline bool is_filled_simplex(const Vector &v, double tol = kFeasibilityTol) {
  return v.size() > 0 && v.minCoeff() >= -tol && v.sum() <= 1.0 + tol;
}

inline bool is_l1_ball(const Vector &v, double tol = kFeasibilityTol) {
  return v.size() > 0 && v.lpNorm<1>() <= 1.0 + tol;
}

/// Point of the unit simplex.
class SimplexVector {
 public:
  explicit SimplexVector(Vector coords, double tol = kFeasibilityTol) : coords_(std::move(coords)) {
    if (!coords_.allFinite() || !is_simplex(coords_, tol))
      throw PreconditionViolation("vector is not in the unit simplex");
  }

  static SimplexVector vertex(Index n, Index i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    return SimplexVector(std::move(e));
  }

  static SimplexVector uniform(Index n) {
    return SimplexVector(Vector::Constant(n, 1.0 / static_cast<double>(n)));
  }

  const Vector &coords() const { return coords_; }
  Index size() const { return coords_.size(); }
  double operator[](Index i) const { return coords_(i); }

  /// Indices with strictly positive weight.
  Index support_size() const { return (coords_.array() > 0.0).count(); }

 private:
  Vector coords_;
};

/// Point of the l1 unit ball. The filled simplex is the subset of
/// nonnegative L1Vectors.
class L1Vector {
 public:
  explicit L1Vector(Vector coords, double tol = kFeasibilityTol) : coords_(std::move(coords)) {
    if (!coords_.allFinite() || !is_l1_ball(coords_, tol))
      throw PreconditionViolation("vector is not in the l1 unit ball");
  }

  static L1Vector zero(Index n) { return L1Vector(Vector::Zero(n)); }

  const Vector &coords() const { return coords_; }
  Index size() const { return coords_.size(); }
  double operator[](Index i) const { return coords_(i); }
  double l1_norm() const { return coords_.lpNorm<1>(); }
  bool is_nonnegative(double tol = kFeasibilityTol) const { return coords_.minCoeff() >= -tol; }
  Index nnz() const { return (coords_.array() != 0.0).count(); }

 private:
  Vector coords_;
};

/// Direction w together with the margin min_i A_i^T w / ||w||.
struct SeparatorReport {
  Vector direction;
  double margin = 0.0;
};

/// Result of a solver run. `gap` bounds objective - optimum.
template <typename Point>
struct SolveReport {
  Point solution;
  double objective = 0.0;
  double gap = 0.0;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
};

inline double svm_objective(const SvmInstance &inst, const SimplexVector &x) {
  detail::require_dims(x.size() == inst.size(), "simplex vector length does not match column count");
  return (inst.matrix.entries() * x.coords()).squaredNorm();
}

inline double lasso_objective(const LassoInstance &inst, const L1Vector &x) {
  detail::require_dims(x.size() == inst.size(), "l1 vector length does not match column count");
  return (inst.matrix().entries() * x.coords() - inst.rhs()).squaredNorm();
}

/// Margin of an arbitrary direction; negative when w does not separate.
inline SeparatorReport margin(const SvmInstance &inst, const Vector &w) {
  detail::require_dims(w.size() == inst.dim(), "direction length does not match matrix rows");
  const double norm = w.norm();
  detail::require(norm > 0.0, "margin of the zero direction is undefined");
  const double m = (inst.matrix.entries().transpose() * w).minCoeff() / norm;
  return {w, m};
}

/// ||Ax|| - margin(Ax); zero when Ax = 0 (global optimum of the squared form).
inline double duality_gap(const SvmInstance &inst, const SimplexVector &x) {
  detail::require_dims(x.size() == inst.size(), "simplex vector length does not match column count");
  const Vector w = inst.matrix.entries() * x.coords();
  const double norm = w.norm();
  if (norm == 0.0) return 0.0;
  return std::max(0.0, norm - margin(inst, w).margin);
}

/// Upper bound on ||Ax||^2 - min_{simplex} ||A.||^2 from the margin of w = Ax:
/// the optimum is at least max(0, margin)^2.
inline double objective_gap_bound(double objective, double margin_value) {
  const double lower = margin_value > 0.0 ? margin_value * margin_value : 0.0;
  return std::max(0.0, objective - lower);
}

inline double objective_gap_bound(const SvmInstance &inst, const SimplexVector &x) {
  const Vector w = inst.matrix.entries() * x.coords();
  const double objective = w.squaredNorm();
  if (objective == 0.0) return 0.0;
  return objective_gap_bound(objective, margin(inst, w).margin);
}

/// Substitutes x = r u so that the returned instance has radius 1 and the
/// same objective at u as the original at r u.
inline LassoInstance normalize_radius(const LassoInstance &inst) {
  if (inst.radius() == 1.0) return inst;
  return LassoInstance(ProblemMatrix(inst.radius() * inst.matrix().entries()), inst.rhs(), 1.0,
                       inst.origin());
}

/// Maps a solution of the normalized instance back to the original scale.
inline Vector denormalize_solution(const Vector &u, double radius) { return radius * u; }

}  // namespace svmlasso

#endif  // SVMLASSO_PROBLEM_HPP
