#ifndef SVMLASSO_FRANK_WOLFE_HPP
#define SVMLASSO_FRANK_WOLFE_HPP

// Frank-Wolfe over the unit simplex for  min x^T K x, K = A^T A or a Gram
// matrix. The algorithm only sees the quadratic through a Geometry policy:
//
//   Index  size() const;
//   double diag(Index i) const;             // K_ii
//   const Vector &correlations() const;     // K x
//   double objective() const;               // x^T K x
//   void reset(const Vector &x);            // recompute state from x
//   void move_towards(Index s, double g);   // x <- (1 - g) x + g e_s
//   void move_away(Index v, double g);      // x <- (1 + g) x - g e_v
//
// Stopping uses the margin certificate: with w = Ax, the optimum is at least
// max(0, min_i (Kx)_i / ||w||)^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "problem.hpp"
#include "solver_config.hpp"

namespace svmlasso {

/// K = A^T A accessed through the explicit features A.
class FeatureGeometry {
 public:
  explicit FeatureGeometry(const Matrix &A) : A_(A), diag_(A.colwise().squaredNorm().transpose()) {}

  Index size() const { return A_.cols(); }
  double diag(Index i) const { return diag_(i); }
  const Vector &correlations() const { return g_; }
  double objective() const { return q_; }
  const Vector &image() const { return w_; }

  void reset(const Vector &x) {
    w_.noalias() = A_ * x;
    refresh();
  }
  void move_towards(Index s, double gamma) {
    w_ = (1.0 - gamma) * w_ + gamma * A_.col(s);
    refresh();
  }
  void move_away(Index v, double gamma) {
    w_ = (1.0 + gamma) * w_ - gamma * A_.col(v);
    refresh();
  }

 private:
  void refresh() {
    g_.noalias() = A_.transpose() * w_;
    q_ = w_.squaredNorm();
  }

  const Matrix &A_;
  Vector diag_;
  Vector w_;
  Vector g_;
  double q_ = 0.0;
};

/// Symmetric Gram matrix K given explicitly; no feature access.
class GramGeometry {
 public:
  explicit GramGeometry(const Matrix &K) : K_(K) {}

  Index size() const { return K_.cols(); }
  double diag(Index i) const { return K_(i, i); }
  const Vector &correlations() const { return g_; }
  double objective() const { return q_; }

  void reset(const Vector &x) {
    g_.noalias() = K_ * x;
    q_ = x.dot(g_);
  }
  void move_towards(Index s, double gamma) {
    const double a = 1.0 - gamma;
    q_ = a * a * q_ + 2.0 * gamma * a * g_(s) + gamma * gamma * K_(s, s);
    g_ = a * g_ + gamma * K_.col(s);
  }
  void move_away(Index v, double gamma) {
    const double a = 1.0 + gamma;
    q_ = a * a * q_ - 2.0 * gamma * a * g_(v) + gamma * gamma * K_(v, v);
    g_ = a * g_ - gamma * K_.col(v);
  }

 private:
  const Matrix &K_;
  Vector g_;
  double q_ = 0.0;
};

namespace detail {

// State refresh period; bounds drift of the incrementally updated state.
inline constexpr std::int64_t kFwRefreshPeriod = 64;

inline double margin_bound(double q, double min_corr) {
  if (q <= 0.0) return 0.0;
  return objective_gap_bound(q, min_corr / std::sqrt(q));
}

}  // namespace detail

/// Minimizes x^T K x over the simplex. Returns the final iterate (best iterate
/// for the open-loop rule) with its objective and certificate as tracked by
/// the geometry; callers recompute both from the solution if they need them
/// exactly.
template <typename Geometry>
SolveReport<SimplexVector> frank_wolfe(Geometry &geo, const SolverConfig &cfg) {
  cfg.validate();
  const Index n = geo.size();
  detail::require(n >= 1, "frank_wolfe needs at least one column");

  // Start at the vertex of smallest norm, lowest index on ties.
  Index start = 0;
  for (Index i = 1; i < n; ++i)
    if (geo.diag(i) < geo.diag(start)) start = i;
  Vector x = Vector::Zero(n);
  x(start) = 1.0;
  geo.reset(x);

  const bool open_loop = cfg.step_rule == StepRule::open_loop;
  const bool use_away = cfg.away_steps && !open_loop;

  Vector best_x = x;
  double best_q = geo.objective();
  double gap = std::numeric_limits<double>::infinity();
  std::int64_t k = 0;
  bool converged = false;

  for (;; ++k) {
    if (k > 0 && k % detail::kFwRefreshPeriod == 0) {
      x /= x.sum();
      geo.reset(x);
    }
    const Vector &g = geo.correlations();
    const double q = geo.objective();
    if (open_loop && q < best_q) {
      best_q = q;
      best_x = x;
    }

    // Linear minimization oracle: lowest index among minimizers.
    Index s = 0;
    for (Index i = 1; i < n; ++i)
      if (g(i) < g(s)) s = i;

    gap = detail::margin_bound(q, g(s));
    if (gap <= cfg.tol) {
      converged = true;
      break;
    }
    if (k >= cfg.max_iter) break;

    if (open_loop) {
      const double gamma = 2.0 / (static_cast<double>(k) + 2.0);
      x *= 1.0 - gamma;
      x(s) += gamma;
      geo.move_towards(s, gamma);
      continue;
    }

    Index v = -1;
    if (use_away) {
      for (Index i = 0; i < n; ++i)
        if (x(i) > 0.0 && (v < 0 || g(i) > g(v))) v = i;
    }
    const double fw_gap = q - g(s);
    const double away_gap = v >= 0 ? g(v) - q : 0.0;

    if (v < 0 || x(v) >= 1.0 || fw_gap >= away_gap) {
      const double slope = g(s) - q;                       // w . (A_s - w)
      const double curvature = geo.diag(s) - 2.0 * g(s) + q;  // ||A_s - w||^2
      if (!(curvature > 0.0)) break;
      const double gamma = std::clamp(-slope / curvature, 0.0, 1.0);
      if (gamma == 0.0) break;
      if (gamma == 1.0) {
        x.setZero();
        x(s) = 1.0;
        geo.reset(x);
      } else {
        x *= 1.0 - gamma;
        x(s) += gamma;
        geo.move_towards(s, gamma);
      }
    } else {
      const double gamma_max = x(v) / (1.0 - x(v));
      const double slope = q - g(v);                          // w . (w - A_v)
      const double curvature = q - 2.0 * g(v) + geo.diag(v);  // ||w - A_v||^2
      if (!(curvature > 0.0)) break;
      const double gamma = std::clamp(-slope / curvature, 0.0, gamma_max);
      if (gamma == 0.0) break;
      x *= 1.0 + gamma;
      x(v) -= gamma;
      if (gamma == gamma_max) x(v) = 0.0;
      geo.move_away(v, gamma);
    }
  }

  if (open_loop && geo.objective() > best_q) {
    x = best_x;
    geo.reset(x);
    const Vector &g = geo.correlations();
    gap = detail::margin_bound(geo.objective(), g.minCoeff());
  }
  x = x.cwiseMax(0.0);
  x /= x.sum();
  SolveReport<SimplexVector> report{SimplexVector(std::move(x)), geo.objective(), gap, k, cfg.seed,
                                    converged};
  return report;
}

/// Frank-Wolfe on the SVM form with the margin certificate recomputed from
/// the returned solution.
inline SolveReport<SimplexVector> solve_svm_fw(const SvmInstance &inst, const SolverConfig &cfg) {
  FeatureGeometry geo(inst.matrix.entries());
  SolveReport<SimplexVector> report = frank_wolfe(geo, cfg);
  report.objective = svm_objective(inst, report.solution);
  report.gap = objective_gap_bound(inst, report.solution);
  report.converged = report.gap <= cfg.tol;
  return report;
}

}  // namespace svmlasso

#endif  // SVMLASSO_FRANK_WOLFE_HPP
