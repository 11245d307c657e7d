#ifndef SVMLASSO_PERCEPTRON_HPP
#define SVMLASSO_PERCEPTRON_HPP

#include <cmath>
#include <limits>

#include "problem.hpp"
#include "solver_config.hpp"

namespace svmlasso {

/// Perceptron with the classical additive update on the minimum-margin
/// column. The direction is kept in the normal form w = A x with x the
/// normalized update counts, so x stays in the simplex. Returns the iterate
/// with the best margin seen. Stops early once the margin certifies
/// ||Ax||^2 within cfg.tol of the optimum.
inline SeparatorReport perceptron(const SvmInstance &inst, const SolverConfig &cfg) {
  cfg.validate();
  const Matrix &A = inst.matrix.entries();
  const Index n = A.cols();

  Vector sum = Vector::Zero(A.rows());  // sum of the chosen columns
  Vector corr = Vector::Zero(n);        // A^T sum
  Vector best_w = A.col(0);
  double best_margin = -std::numeric_limits<double>::infinity();

  for (std::int64_t k = 1; k <= cfg.max_iter; ++k) {
    Index pick = 0;
    for (Index i = 1; i < n; ++i)
      if (corr(i) < corr(pick)) pick = i;
    sum += A.col(pick);
    corr.noalias() = A.transpose() * sum;

    const double norm = sum.norm();
    if (norm == 0.0) continue;
    const double m = corr.minCoeff() / norm;
    if (m > best_margin) {
      best_margin = m;
      best_w = sum / static_cast<double>(k);
    }
    const double scaled = norm / static_cast<double>(k);
    if (objective_gap_bound(scaled * scaled, m) <= cfg.tol) break;
  }
  if (!std::isfinite(best_margin)) {
    // Every iterate had Ax = 0.
    return {best_w, best_w.norm() == 0.0 ? 0.0 : margin(inst, best_w).margin};
  }
  return {best_w, best_margin};
}

}  // namespace svmlasso

#endif  // SVMLASSO_PERCEPTRON_HPP
