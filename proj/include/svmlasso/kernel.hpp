#ifndef SVMLASSO_KERNEL_HPP
#define SVMLASSO_KERNEL_HPP

// Kernelized Lasso: min_{||x||_1 <= 1} || sum_i Psi(A_i) x_i - Psi(b) ||^2
// solved as the simplex problem over the 2n points s_j Psi(A_j) - Psi(b),
// whose Gram matrix only needs kernel values among {A_1..A_n, b}.

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frank_wolfe.hpp"
#include "problem.hpp"

namespace svmlasso {

enum class KernelKind { linear, polynomial, rbf, precomputed };

struct KernelSpec {
  KernelKind kind = KernelKind::linear;
  int degree = 2;
  double coef0 = 0.0;
  double gamma = 1.0;
  // Kernel matrix over the point list {A_1, ..., A_n, b}.
  Matrix precomputed;

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double coef0) {
    KernelSpec k;
    k.kind = KernelKind::polynomial;
    k.degree = degree;
    k.coef0 = coef0;
    return k;
  }
  static KernelSpec rbf(double gamma) {
    KernelSpec k;
    k.kind = KernelKind::rbf;
    k.gamma = gamma;
    return k;
  }
  static KernelSpec from_matrix(Matrix m) {
    KernelSpec k;
    k.kind = KernelKind::precomputed;
    k.precomputed = std::move(m);
    return k;
  }

  void validate() const {
    switch (kind) {
      case KernelKind::linear:
        break;
      case KernelKind::polynomial:
        detail::require(degree >= 1, "polynomial kernel degree must be at least 1");
        detail::require(std::isfinite(coef0), "polynomial kernel coef0 must be finite");
        break;
      case KernelKind::rbf:
        detail::require(gamma > 0.0 && std::isfinite(gamma), "rbf kernel gamma must be positive");
        break;
      case KernelKind::precomputed:
        if (precomputed.rows() != precomputed.cols() || precomputed.rows() < 2)
          throw DataError("precomputed kernel must be a square matrix over at least two points");
        if (!precomputed.allFinite()) throw DataError("precomputed kernel has non-finite entries");
        if ((precomputed - precomputed.transpose()).cwiseAbs().maxCoeff() > 1e-10)
          throw DataError("precomputed kernel is not symmetric");
        break;
    }
  }
};

template <typename Y, typename Z>
double kernel_eval(const KernelSpec &spec, const Eigen::MatrixBase<Y> &y, const Eigen::MatrixBase<Z> &z) {
  detail::require_dims(y.size() == z.size(), "kernel arguments have different dimensions");
  switch (spec.kind) {
    case KernelKind::linear:
      return y.dot(z);
    case KernelKind::polynomial:
      return std::pow(y.dot(z) + spec.coef0, spec.degree);
    case KernelKind::rbf:
      return std::exp(-spec.gamma * (y - z).squaredNorm());
    case KernelKind::precomputed:
      break;
  }
  throw PreconditionViolation("a precomputed kernel cannot be evaluated on raw vectors");
}

inline constexpr double kPsdTolerance = -1e-8;

/// 2n x 2n Gram matrix of the mirrored, translated points, with their signs.
class KernelLassoGram {
 public:
  KernelLassoGram(Matrix gram, std::vector<int> signs) : gram_(std::move(gram)), signs_(std::move(signs)) {
    if (gram_.rows() != gram_.cols()) throw DataError("kernel Gram matrix is not square");
    detail::require_dims(static_cast<Index>(signs_.size()) == gram_.rows(),
                         "sign vector does not match Gram size");
    if (!gram_.allFinite()) throw DataError("kernel Gram matrix has non-finite entries");
    if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-10)
      throw DataError("kernel Gram matrix is not symmetric");
    min_eigenvalue_ = Eigen::SelfAdjointEigenSolver<Matrix>(gram_, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
    if (min_eigenvalue_ < kPsdTolerance)
      throw DataError("kernel Gram matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(min_eigenvalue_) + ")");
  }

  const Matrix &gram() const { return gram_; }
  const std::vector<int> &signs() const { return signs_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  Index size() const { return gram_.rows(); }

 private:
  Matrix gram_;
  std::vector<int> signs_;
  double min_eigenvalue_ = 0.0;
};

/// Kernel values among the point list {A_1, ..., A_n, b}.
inline Matrix point_kernel_matrix(const ProblemMatrix &A, const Vector &b, const KernelSpec &spec) {
  spec.validate();
  const Index n = A.cols();
  if (spec.kind == KernelKind::precomputed) {
    detail::require_dims(spec.precomputed.rows() == n + 1,
                         "precomputed kernel must cover the n columns and the rhs");
    return spec.precomputed;
  }
  detail::require_dims(b.size() == A.rows(), "rhs length does not match matrix rows");
  Matrix P(n + 1, n + 1);
  auto point = [&](Index i) -> Vector { return i < n ? Vector(A.column(i)) : b; };
  for (Index i = 0; i <= n; ++i) {
    const Vector pi = point(i);
    for (Index j = i; j <= n; ++j) {
      P(i, j) = kernel_eval(spec, pi, point(j));
      P(j, i) = P(i, j);
    }
  }
  return P;
}

/// K[u, v] = s_u s_v k(A_i, A_j) - s_u k(A_i, b) - s_v k(A_j, b) + k(b, b),
/// where u addresses column i with sign s_u (first block +, second block -).
inline KernelLassoGram kernel_lasso_gram(const ProblemMatrix &A, const Vector &b, const KernelSpec &spec) {
  const Matrix P = point_kernel_matrix(A, b, spec);
  const Index n = A.cols();
  const Index m = 2 * n;
  std::vector<int> signs(m);
  for (Index u = 0; u < m; ++u) signs[u] = u < n ? 1 : -1;

  Matrix K(m, m);
  const double kbb = P(n, n);
  for (Index u = 0; u < m; ++u) {
    const Index i = u % n;
    const double su = signs[u];
    for (Index v = u; v < m; ++v) {
      const Index j = v % n;
      const double sv = signs[v];
      K(u, v) = su * sv * P(i, j) - su * P(i, n) - sv * P(j, n) + kbb;
      K(v, u) = K(u, v);
    }
  }
  return KernelLassoGram(std::move(K), std::move(signs));
}

struct KernelLassoSolution {
  SolveReport<SimplexVector> report;
  Vector coefficients;  // signed pullback: first block minus second block
};

/// Frank-Wolfe on min_{x in simplex} x^T K x using Gram entries only.
inline SolveReport<SimplexVector> solve_gram_fw(const Matrix &K, const SolverConfig &cfg) {
  if (K.rows() != K.cols() || (K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw DataError("Gram matrix is not symmetric");
  GramGeometry geo(K);
  SolveReport<SimplexVector> report = frank_wolfe(geo, cfg);
  const Vector &x = report.solution.coords();
  const Vector Kx = K * x;
  report.objective = std::max(0.0, x.dot(Kx));
  report.gap = detail::margin_bound(report.objective, Kx.minCoeff());
  report.converged = report.gap <= cfg.tol;
  return report;
}

inline KernelLassoSolution solve_kernel_lasso(const KernelLassoGram &gram, const SolverConfig &cfg) {
  detail::require_dims(gram.size() % 2 == 0, "kernel Lasso Gram must have even size");
  SolveReport<SimplexVector> report = solve_gram_fw(gram.gram(), cfg);
  const Index n = gram.size() / 2;
  Vector coefficients = report.solution.coords().head(n) - report.solution.coords().tail(n);
  return {std::move(report), std::move(coefficients)};
}

}  // namespace svmlasso

#endif  // SVMLASSO_KERNEL_HPP
