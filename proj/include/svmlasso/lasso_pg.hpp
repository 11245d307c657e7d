#ifndef SVMLASSO_LASSO_PG_HPP
#define SVMLASSO_LASSO_PG_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "problem.hpp"
#include "solver_config.hpp"

namespace svmlasso {

/// Euclidean projection onto the l1 unit ball (sort-based soft threshold).
inline L1Vector project_l1(const Vector &v) {
  if (!v.allFinite()) throw DataError("cannot project a vector with non-finite entries");
  if (v.lpNorm<1>() <= 1.0) return L1Vector(v);
  std::vector<double> u(v.size());
  for (Index i = 0; i < v.size(); ++i) u[i] = std::abs(v(i));
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector x = v.unaryExpr([theta](double a) {
    const double m = std::abs(a) - theta;
    return m > 0.0 ? std::copysign(m, a) : 0.0;
  });
  // Guard the rounding of the threshold so the result is feasible.
  const double norm = x.lpNorm<1>();
  if (norm > 1.0) x /= norm;
  return L1Vector(std::move(x));
}

/// Largest eigenvalue of A^T A by power iteration from a seed-fixed start.
inline double estimate_lipschitz(const Matrix &A, std::uint64_t seed, int iterations = 50) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v = Vector::NullaryExpr(A.cols(), [&]() { return normal(rng); });
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = v.norm();
    if (norm == 0.0) return 0.0;
    v /= norm;
    Vector Av = A * v;
    lambda = Av.squaredNorm();
    v.noalias() = A.transpose() * Av;
  }
  return lambda;
}

/// Duality gap of the l1-constrained least squares problem at x:
/// grad^T x + ||grad||_inf with grad = 2 A^T (Ax - b). Upper-bounds f(x) - f*.
inline double lasso_gap(const LassoInstance &inst, const Vector &x) {
  const Matrix &A = inst.matrix().entries();
  const Vector grad = 2.0 * (A.transpose() * (A * x - inst.rhs()));
  return std::max(0.0, grad.dot(x) + grad.lpNorm<Eigen::Infinity>());
}

/// Projected gradient for min_{||x||_1 <= 1} ||Ax - b||^2. Stops when the
/// projected-gradient step ||x - P(x - grad/L)|| drops below cfg.tol.
/// With cfg.accelerate, uses momentum with gradient-based restarts.
inline SolveReport<L1Vector> solve_lasso_pg(const LassoInstance &inst, const SolverConfig &cfg) {
  cfg.validate();
  detail::require(inst.radius() == 1.0, "solve_lasso_pg expects a radius-normalized instance");
  const Matrix &A = inst.matrix().entries();
  const Vector &b = inst.rhs();
  const Index n = A.cols();

  // The objective's Hessian is 2 A^T A. Power iteration gives a lower
  // estimate, so the sufficient-decrease check below may still raise L.
  double L = 2.0 * estimate_lipschitz(A, cfg.seed);
  if (!(L > 0.0)) {
    // A = 0: every feasible point is optimal.
    L1Vector zero = L1Vector::zero(n);
    const double f = lasso_objective(inst, zero);
    return {std::move(zero), f, 0.0, 0, cfg.seed, true};
  }

  auto objective = [&](const Vector &x) { return (A * x - b).squaredNorm(); };
  auto gradient = [&](const Vector &x) -> Vector { return 2.0 * (A.transpose() * (A * x - b)); };

  Vector x = Vector::Zero(n);
  Vector y = x;
  double t = 1.0;
  std::int64_t k = 0;
  bool converged = false;

  for (; k < cfg.max_iter; ++k) {
    const Vector grad_y = gradient(y);
    const double f_y = objective(y);
    Vector x_next;
    for (;;) {
      x_next = project_l1(y - grad_y / L).coords();
      const Vector diff = x_next - y;
      const double model = f_y + grad_y.dot(diff) + 0.5 * L * diff.squaredNorm();
      if (objective(x_next) <= model + 1e-12 * std::max(1.0, std::abs(f_y))) break;
      L *= 2.0;
    }

    if (cfg.accelerate) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      if ((y - x_next).dot(x_next - x) > 0.0) {
        t = 1.0;
        y = x_next;
      } else {
        y = x_next + ((t - 1.0) / t_next) * (x_next - x);
        t = t_next;
      }
    } else {
      y = x_next;
    }
    x = std::move(x_next);

    const Vector step = x - project_l1(x - gradient(x) / L).coords();
    if (step.norm() <= cfg.tol) {
      converged = true;
      ++k;
      break;
    }
  }

  L1Vector solution(x);
  const double f = lasso_objective(inst, solution);
  const double gap = lasso_gap(inst, x);
  return {std::move(solution), f, gap, k, cfg.seed, converged};
}

}  // namespace svmlasso

#endif  // SVMLASSO_LASSO_PG_HPP
