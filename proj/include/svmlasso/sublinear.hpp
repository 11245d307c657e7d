#ifndef SVMLASSO_SUBLINEAR_HPP
#define SVMLASSO_SUBLINEAR_HPP

// Entry-oracle access to a (reduced) SVM matrix and a sampled primal-dual
// solver for  min_{p in simplex} max_{||w|| <= 1} w^T A p.
//
// Each iteration
//   primal: samples a column i ~ p and takes an online-gradient step on w
//           (reads one column, d entries);
//   dual:   samples a row j with probability w_j^2 / ||w||^2 and updates the
//           multiplicative weights of every column with the unbiased estimate
//           A_ij ||w||^2 / w_j of A_i^T w (reads one row, n entries).
// Entries are fetched once and reused across iterations and repetitions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <unordered_map>
#include <utility>

#include "problem.hpp"
#include "solver_config.hpp"

namespace svmlasso {

/// Read-only single-entry access to an implicit rows() x cols() matrix. The
/// query counter is atomic so concurrent readers may share one oracle.
class EntryOracle {
 public:
  using Accessor = std::function<double(Index, Index)>;

  EntryOracle(Index rows, Index cols, Accessor accessor)
      : rows_(rows), cols_(cols), accessor_(std::move(accessor)) {
    detail::require(rows_ >= 1 && cols_ >= 1, "entry oracle needs positive dimensions");
  }
  EntryOracle(const EntryOracle &) = delete;
  EntryOracle &operator=(const EntryOracle &) = delete;

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::uint64_t queries() const { return counter_.load(std::memory_order_relaxed); }

  double operator()(Index i, Index j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw PreconditionViolation("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") is out of range");
    counter_.fetch_add(1, std::memory_order_relaxed);
    return accessor_(i, j);
  }

 private:
  Index rows_;
  Index cols_;
  Accessor accessor_;
  mutable std::atomic<std::uint64_t> counter_{0};
};

/// Oracle over the 2n columns of the reduced SVM, (A | -A) - b 1^T, computed
/// on the fly from the Lasso data.
inline EntryOracle make_entry_oracle(const LassoInstance &inst) {
  detail::require(inst.radius() == 1.0, "entry oracle expects a radius-normalized instance");
  auto A = std::make_shared<const Matrix>(inst.matrix().entries());
  auto b = std::make_shared<const Vector>(inst.rhs());
  const Index n = A->cols();
  return EntryOracle(A->rows(), 2 * n, [A, b, n](Index i, Index j) {
    return j < n ? (*A)(i, j) - (*b)(i) : -(*A)(i, j - n) - (*b)(i);
  });
}

/// Oracle over the columns of an SVM matrix as given.
inline EntryOracle make_entry_oracle(const SvmInstance &inst) {
  auto A = std::make_shared<const Matrix>(inst.matrix.entries());
  return EntryOracle(A->rows(), A->cols(), [A](Index i, Index j) { return (*A)(i, j); });
}

struct SublinearOptions {
  double epsilon = 0.1;
  int repetitions = 5;
  // Iterations per repetition: ceil(iteration_scale * max(ln(cols), min_log) / epsilon^2).
  // The floor keeps very narrow instances from running only a handful of steps.
  double iteration_scale = 0.08;
  double min_log = 4.0;
  // Upper bound on column norms; queried entries are divided by it.
  double norm_bound = 1.0;

  std::int64_t iterations(Index cols) const {
    const double logn = std::max(min_log, std::log(static_cast<double>(cols)));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(iteration_scale * logn / (epsilon * epsilon))));
  }
};

struct SublinearReport {
  Vector direction;
  double margin_estimate = 0.0;  // exact margin of `direction`, from the verification pass
  std::uint64_t entries_queried = 0;       // sampled loop only
  std::uint64_t verification_entries = 0;  // final full pass
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;  // per repetition
  int repetitions = 0;
  int best_repetition = 0;
};

namespace detail {

// Caches whole rows and columns fetched from the oracle; an entry already
// present in a cached row or column is never queried again.
class EntryCache {
 public:
  explicit EntryCache(const EntryOracle &oracle)
      : oracle_(oracle), row_cached_(oracle.rows(), false), col_cached_(oracle.cols(), false) {}

  const Vector &column(Index j) {
    if (auto it = cols_.find(j); it != cols_.end()) return it->second;
    Vector c(oracle_.rows());
    for (Index i = 0; i < oracle_.rows(); ++i) c(i) = row_cached_[i] ? rows_.at(i)(j) : oracle_(i, j);
    col_cached_[j] = true;
    return cols_.emplace(j, std::move(c)).first->second;
  }

  const Vector &row(Index i) {
    if (auto it = rows_.find(i); it != rows_.end()) return it->second;
    Vector r(oracle_.cols());
    for (Index j = 0; j < oracle_.cols(); ++j) r(j) = col_cached_[j] ? cols_.at(j)(i) : oracle_(i, j);
    row_cached_[i] = true;
    return rows_.emplace(i, std::move(r)).first->second;
  }

 private:
  const EntryOracle &oracle_;
  std::vector<bool> row_cached_;
  std::vector<bool> col_cached_;
  std::unordered_map<Index, Vector> rows_;
  std::unordered_map<Index, Vector> cols_;
};

template <typename Rng>
Index sample_index(const Vector &weights, double total, Rng &rng) {
  std::uniform_real_distribution<double> unif(0.0, total);
  double u = unif(rng);
  const Index last = weights.size() - 1;
  for (Index i = 0; i < last; ++i) {
    u -= weights(i);
    if (u < 0.0) return i;
  }
  return last;
}

// One repetition; returns the averaged primal direction (unnormalized units).
inline Vector sublinear_repetition(EntryCache &cache, Index d, Index m, std::int64_t T, double scale,
                                   std::mt19937_64 &rng) {
  const double eta = std::sqrt(std::log(std::max<double>(2.0, static_cast<double>(m))) / static_cast<double>(T));
  const double clip = 1.0 / eta;
  const double step = 1.0 / std::sqrt(2.0 * static_cast<double>(T));

  Vector y = Vector::Zero(d);
  Vector w = Vector::Zero(d);
  Vector w_sum = Vector::Zero(d);
  Vector u = Vector::Ones(m);

  for (std::int64_t t = 0; t < T; ++t) {
    const Index i = sample_index(u, u.sum(), rng);
    y += (step * scale) * cache.column(i);

    const Vector w_prev = w;
    w = y / std::max(1.0, y.norm());
    w_sum += w;

    const double wsq = w_prev.squaredNorm();
    if (wsq > 0.0) {
      const Vector probs = w_prev.cwiseAbs2();
      const Index j = sample_index(probs, probs.sum(), rng);
      const Vector &row = cache.row(j);
      const double factor = scale * wsq / w_prev(j);
      for (Index k = 0; k < m; ++k) {
        const double v = std::clamp(row(k) * factor, -clip, clip);
        u(k) *= 1.0 - eta * v + eta * eta * v * v;
      }
      u /= u.maxCoeff();
    }
  }
  return w_sum / static_cast<double>(T);
}

}  // namespace detail

/// Sampled primal-dual solver with best-of-repetitions amplification. One
/// streamed verification pass scores every repetition's direction exactly;
/// its reads are counted in verification_entries, not entries_queried.
inline SublinearReport solve_sublinear(const EntryOracle &oracle, const SublinearOptions &opts,
                                       const SolverConfig &cfg) {
  detail::require(opts.epsilon > 0.0, "epsilon must be positive");
  detail::require(opts.repetitions >= 1, "at least one repetition is required");
  detail::require(opts.norm_bound > 0.0, "norm bound must be positive");
  detail::require(opts.iteration_scale > 0.0, "iteration scale must be positive");

  const Index d = oracle.rows();
  const Index m = oracle.cols();
  std::int64_t T = opts.iterations(m);
  T = std::min<std::int64_t>(T, cfg.max_iter);
  const double scale = 1.0 / opts.norm_bound;

  SublinearReport report;
  report.epsilon = opts.epsilon;
  report.seed = cfg.seed;
  report.iterations = T;
  report.repetitions = opts.repetitions;
  report.margin_estimate = -std::numeric_limits<double>::infinity();

  detail::EntryCache cache(oracle);
  std::vector<Vector> candidates;
  const std::uint64_t before = oracle.queries();
  for (int r = 0; r < opts.repetitions; ++r) {
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    candidates.push_back(detail::sublinear_repetition(cache, d, m, T, scale, rng));
  }
  report.entries_queried = oracle.queries() - before;

  // Verification: exact margins of every candidate from one streamed pass.
  const std::uint64_t before_verify = oracle.queries();
  std::vector<double> mins(candidates.size(), std::numeric_limits<double>::infinity());
  Vector column(d);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < d; ++i) column(i) = oracle(i, j);
    for (std::size_t r = 0; r < candidates.size(); ++r)
      mins[r] = std::min(mins[r], column.dot(candidates[r]));
  }
  report.verification_entries = oracle.queries() - before_verify;

  for (std::size_t r = 0; r < candidates.size(); ++r) {
    const double norm = candidates[r].norm();
    if (norm == 0.0) continue;
    const double mr = mins[r] / norm;
    if (mr > report.margin_estimate) {
      report.margin_estimate = mr;
      report.direction = candidates[r];
      report.best_repetition = static_cast<int>(r);
    }
  }
  if (report.direction.size() == 0) {
    report.direction = Vector::Zero(d);
    report.margin_estimate = 0.0;
  }
  return report;
}

}  // namespace svmlasso

#endif  // SVMLASSO_SUBLINEAR_HPP
