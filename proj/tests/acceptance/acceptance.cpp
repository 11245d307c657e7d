// Acceptance harness: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "support/random_instances.hpp"

namespace sl = svmlasso;
using sl::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

sl::SolverConfig config(double tol, std::uint64_t seed = 0) {
  sl::SolverConfig cfg;
  cfg.tol = tol;
  cfg.seed = seed;
  return cfg;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// 1. Lasso optimum by projected gradient equals the reduced SVM optimum by
// Frank-Wolfe.
Outcome lasso_svm_values() {
  Rng rng(1001);
  const auto start = Clock::now();
  double worst = 0.0;
  int unconverged = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = rng.lasso(rng.integer(1, 50), rng.integer(1, 50));
    const auto pg = sl::solve_lasso_pg(inst, config(1e-10));
    const auto fw = sl::solve_svm_fw(sl::lasso_to_svm(inst).first, config(1e-10));
    worst = std::max(worst, std::abs(pg.objective - fw.objective));
    unconverged += !(pg.converged && fw.converged);
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-7 && elapsed <= 60.0 && unconverged == 0,
          fmt("max |PG - FW| = %.3g (<= 1e-7), %d unconverged, %.1f s (<= 60 s)", worst, unconverged, elapsed)};
}

// 2. Pointwise objective preservation under the barycentric map.
Outcome pointwise_preservation() {
  Rng rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto inst = rng.lasso(rng.integer(1, 30), rng.integer(1, 30));
    const auto svm = sl::lasso_to_svm(inst).first;
    const sl::L1Vector x(rng.l1_point(inst.size(), rng.uniform(0.0, 1.0)));
    worst = std::max(worst, std::abs(sl::lasso_objective(inst, x) - sl::svm_objective(svm, sl::barycentric_expand(x))));
  }
  return {worst <= 1e-12, fmt("max |lasso(x) - svm(expand(x))| = %.3g over 1000 pairs (<= 1e-12)", worst)};
}

struct SoftMarginCase {
  sl::LabeledData data;
  sl::SvmInstance svm;
};

std::vector<SoftMarginCase> soft_margin_cases(std::uint64_t seed, int count) {
  Rng rng(seed);
  const double Cs[] = {0.1, 1.0, 10.0};
  std::vector<SoftMarginCase> out;
  for (int t = 0; t < count; ++t) {
    auto data = rng.labeled(rng.integer(1, 30), rng.integer(1, 30), Cs[t % 3]);
    auto svm = sl::soft_margin_dual(data);
    out.push_back({std::move(data), std::move(svm)});
  }
  return out;
}

// 3. SVM -> Lasso on soft-margin duals with the trivial separator.
Outcome svm_to_lasso_values() {
  double worst = 0.0, worst_feasibility = 0.0;
  for (const auto &c : soft_margin_cases(1003, 50)) {
    const auto sep = sl::trivial_separator(c.data.size(), c.data.C(), c.data.dim());
    const double bigD = 1.01 * c.svm.matrix.column_norms().maxCoeff();
    const auto lasso = sl::svm_to_lasso(c.svm, sep, bigD).first;
    const auto fw = sl::solve_svm_fw(c.svm, config(1e-10));
    const auto pg = sl::solve_lasso_pg(lasso, config(1e-10));
    worst = std::max(worst, std::abs(fw.objective - pg.objective));
    const sl::Vector &x = pg.solution.coords();
    worst_feasibility = std::max({worst_feasibility, -x.minCoeff(), std::abs(x.sum() - 1.0)});
  }
  return {worst <= 1e-6 && worst_feasibility <= 1e-8,
          fmt("max |SVM - Lasso| = %.3g (<= 1e-6), max simplex violation %.3g (<= 1e-8)", worst, worst_feasibility)};
}

// 4. Flipping and scaling strictly improve; inner positivity holds.
Outcome improvement_maps() {
  Rng rng(1004);
  long flips = 0, flip_bad = 0, scales = 0, scale_bad = 0, pairs = 0, pair_bad = 0;
  const double Cs[] = {0.1, 1.0, 10.0};
  for (int k = 0; k < 100; ++k) {
    const sl::Index n = rng.integer(2, 12);
    const auto data = rng.labeled(rng.integer(1, 12), n, Cs[k % 3]);
    const auto svm = sl::soft_margin_dual(data);
    const auto [lasso, meta] =
        sl::svm_to_lasso(svm, sl::trivial_separator(n, data.C(), data.dim()), sl::estimate_bigD(svm));
    for (int t = 0; t < 1000; ++t) {
      sl::Vector x = rng.l1_point(n, rng.uniform(0.0, 1.0));
      if (x.minCoeff() >= 0.0) x(rng.integer(0, n - 1)) = -std::abs(x(rng.integer(0, n - 1))) - 1e-3 / n;
      x *= std::min(1.0, 1.0 / x.lpNorm<1>());
      const sl::L1Vector xv(x);
      ++flips;
      flip_bad += !(sl::lasso_objective(lasso, sl::flip_to_nonneg(lasso, xv)) < sl::lasso_objective(lasso, xv));

      const sl::L1Vector y(rng.filled_simplex(n, rng.uniform(1e-3, 1.0 - 1e-3)));
      ++scales;
      scale_bad += !(sl::lasso_objective(lasso, sl::L1Vector(sl::scale_to_simplex(lasso, y).coords())) <
                     sl::lasso_objective(lasso, y));

      const sl::Vector u = rng.filled_simplex(n, rng.uniform(0.0, 1.0));
      const sl::Vector delta = rng.filled_simplex(n, rng.uniform(1e-3, 1.0));
      ++pairs;
      pair_bad += !sl::check_inner_positivity(lasso, meta, u, delta);
    }
  }
  return {flip_bad == 0 && scale_bad == 0 && pair_bad == 0,
          fmt("violations: flip %ld/%ld, scale %ld/%ld, inner positivity %ld/%ld", flip_bad, flips, scale_bad,
              scales, pair_bad, pairs)};
}

// 5. Primal reconstruction from the dual optimum.
Outcome strong_duality() {
  double worst = 0.0;
  for (const auto &c : soft_margin_cases(1005, 50)) {
    const auto fw = sl::solve_svm_fw(c.svm, config(1e-12));
    const auto primal = sl::soft_margin_primal(c.data, fw.solution);
    worst = std::max(worst, std::abs(primal.value + 0.5 * fw.objective));
  }
  return {worst <= 1e-6, fmt("max |primal + dual/2| = %.3g over 50 datasets (<= 1e-6)", worst)};
}

// 6. Measured margin of the trivial separator.
Outcome trivial_margin() {
  double worst_ulps = 0.0;
  for (const auto &c : soft_margin_cases(1003, 50)) {
    const auto sep = sl::trivial_separator(c.data.size(), c.data.C(), c.data.dim());
    const double expected = 1.0 / std::sqrt(static_cast<double>(c.data.size()) * c.data.C());
    const double measured = sl::margin(c.svm, sep.direction).margin;
    worst_ulps = std::max(worst_ulps, std::abs(measured - expected) / (expected * std::numeric_limits<double>::epsilon()));
  }
  return {worst_ulps <= 4.0, fmt("max deviation from 1/sqrt(nC) = %.1f ulp (<= 4 ulp)", worst_ulps)};
}

// 7. Sampled solver: success rate against the Frank-Wolfe margin and entry
// count at 200 x 200. Instances are reduced Lasso problems with uniform data,
// scaled so the largest reduced column has unit norm.
Outcome sublinear() {
  struct Size {
    sl::Index d, n_eff;
  };
  std::vector<Size> sizes(10, Size{200, 200});
  for (Size s : {Size{200, 40}, Size{150, 160}, Size{120, 120}, Size{100, 80}, Size{64, 64}, Size{180, 100},
                 Size{90, 120}, Size{160, 200}, Size{200, 120}, Size{110, 200}})
    sizes.push_back(s);

  Rng rng(1007);
  const auto start = Clock::now();
  const double epsilon = 0.2;
  int runs = 0, successes = 0;
  double entries_200 = 0.0;
  int runs_200 = 0;
  double worst_rate = 1.0;
  double sigma_min = std::numeric_limits<double>::infinity(), sigma_max = 0.0;
  for (const Size s : sizes) {
    const sl::Index n = s.n_eff / 2;
    const auto raw = rng.lasso(s.d, n);
    const double scale = sl::lasso_to_svm(raw).first.matrix.column_norms().maxCoeff();
    const sl::LassoInstance inst(sl::ProblemMatrix(raw.matrix().entries() / scale), raw.rhs() / scale);
    const auto svm = sl::lasso_to_svm(inst).first;
    const double sigma = std::sqrt(sl::solve_svm_fw(svm, config(1e-10)).objective);
    sigma_min = std::min(sigma_min, sigma);
    sigma_max = std::max(sigma_max, sigma);

    int ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto oracle = sl::make_entry_oracle(inst);
      sl::SublinearOptions opts;
      opts.epsilon = epsilon;
      opts.repetitions = 5;
      const auto rep = sl::solve_sublinear(oracle, opts, config(1e-8, seed));
      ok += rep.margin_estimate >= sigma - epsilon;
      if (s.d == 200 && s.n_eff == 200) {
        entries_200 += static_cast<double>(rep.entries_queried);
        ++runs_200;
      }
    }
    runs += 50;
    successes += ok;
    worst_rate = std::min(worst_rate, ok / 50.0);
  }
  const double elapsed = seconds_since(start);
  const double rate = static_cast<double>(successes) / runs;
  const double fraction = entries_200 / runs_200 / (200.0 * 200.0);
  return {rate >= 0.9 && fraction < 0.5 && elapsed <= 300.0,
          fmt("success %d/%d = %.3f (>= 0.9; worst instance %.2f; sigma* in [%.2f, %.2f]), mean entries at 200x200 = "
              "%.3f d n_eff (< 0.5), %.1f s (<= 300 s)",
              successes, runs, rate, worst_rate, sigma_min, sigma_max, fraction, elapsed)};
}

// 8. Linear-kernel Gram against the explicit reduction, and optimum agreement.
Outcome kernel_consistency() {
  Rng rng(1008);
  double worst_gram = 0.0, worst_value = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = rng.lasso(rng.integer(1, 30), rng.integer(1, 30));
    const auto svm = sl::lasso_to_svm(inst).first;
    const sl::Matrix explicit_gram = svm.matrix.entries().transpose() * svm.matrix.entries();
    const auto gram = sl::kernel_lasso_gram(inst.matrix(), inst.rhs(), sl::KernelSpec::linear());
    worst_gram = std::max(worst_gram, (gram.gram() - explicit_gram).cwiseAbs().maxCoeff());
    const auto kernel = sl::solve_kernel_lasso(gram, config(1e-10));
    const auto fw = sl::solve_svm_fw(svm, config(1e-10));
    worst_value = std::max(worst_value, std::abs(kernel.report.objective - fw.objective));
  }
  return {worst_gram <= 1e-12 && worst_value <= 1e-7,
          fmt("max Gram deviation %.3g (<= 1e-12), max optimum deviation %.3g (<= 1e-7)", worst_gram, worst_value)};
}

// 9. Screening soundness and re-solve agreement.
Outcome screening() {
  Rng rng(1009);
  long lasso_bad = 0, svm_bad = 0, lasso_discarded = 0, svm_discarded = 0;
  double lasso_resolve = 0.0, svm_resolve = 0.0, oracle_check = 0.0;
  constexpr double kActive = 1e-9;

  // Lasso: d > n gives full column rank, hence a unique optimum.
  for (int t = 0; t < 100; ++t) {
    const auto inst = rng.lasso(rng.integer(21, 40), rng.integer(5, 20));
    const auto opt = sl::solve_lasso_pg(inst, config(1e-12));
    const auto cross = sl::solve_svm_fw(sl::lasso_to_svm(inst).first, config(1e-12));
    oracle_check = std::max(oracle_check, std::abs(opt.objective - cross.objective));

    const auto ref = sl::solve_lasso_pg(inst, config(1e-4));
    const auto screen = sl::screen_lasso(inst, ref.solution, sl::lasso_gap(inst, ref.solution.coords()));
    lasso_discarded += static_cast<long>(screen.discarded.size());
    for (sl::Index j : screen.discarded) lasso_bad += std::abs(opt.solution[j]) > kActive;
    const auto reduced = sl::solve_lasso_pg(sl::restrict_lasso(inst, screen), config(1e-12));
    lasso_resolve = std::max(lasso_resolve, std::abs(reduced.objective - opt.objective));
  }

  // SVM: shifted columns make the instance separable, so the optimum can be
  // cross-checked by projected gradient on the translated Lasso.
  for (int t = 0; t < 100; ++t) {
    const sl::Index n = rng.integer(5, 20);
    sl::Matrix A = rng.matrix(rng.integer(n + 1, 40), n);
    A.array() += 0.3;
    const sl::SvmInstance inst{sl::ProblemMatrix(A), sl::SvmOrigin::raw};
    const auto opt = sl::solve_svm_fw(inst, config(1e-12));
    const sl::Vector w = A * opt.solution.coords();
    const auto sep = sl::margin(inst, w);
    if (sep.margin > 0.0) {
      const auto lasso = sl::svm_to_lasso(inst, sep, sl::estimate_bigD(inst)).first;
      oracle_check = std::max(oracle_check, std::abs(sl::solve_lasso_pg(lasso, config(1e-12)).objective - opt.objective));
    }

    const auto ref = sl::solve_svm_fw(inst, config(1e-4));
    const auto screen = sl::screen_svm(inst, ref.solution, sl::objective_gap_bound(inst, ref.solution));
    svm_discarded += static_cast<long>(screen.discarded.size());
    for (sl::Index j : screen.discarded) svm_bad += opt.solution[j] > kActive;
    const auto reduced = sl::solve_svm_fw(sl::restrict_svm(inst, screen), config(1e-12));
    svm_resolve = std::max(svm_resolve, std::abs(reduced.objective - opt.objective));
  }
  return {lasso_bad == 0 && svm_bad == 0 && lasso_resolve <= 1e-10 && svm_resolve <= 1e-10 && oracle_check <= 1e-9,
          fmt("lasso: %ld active discarded of %ld, re-solve %.3g; svm: %ld active discarded of %ld, re-solve %.3g "
              "(<= 1e-10); oracle cross-check %.3g",
              lasso_bad, lasso_discarded, lasso_resolve, svm_bad, svm_discarded, svm_resolve, oracle_check)};
}

// 10. Lasso nnz equals SVM support size on non-degenerate solutions.
Outcome support_counts() {
  Rng rng(1010);
  constexpr double kActive = 1e-9;
  int cases = 0, matches = 0, skipped = 0;
  while (cases < 100) {
    const auto inst = rng.lasso(rng.integer(21, 40), rng.integer(3, 20));
    const auto fw = sl::solve_svm_fw(sl::lasso_to_svm(inst).first, config(1e-12));
    const sl::Vector &s = fw.solution.coords();
    const sl::Index n = inst.size();
    bool degenerate = false;
    for (sl::Index j = 0; j < n; ++j) degenerate |= s(j) > kActive && s(j + n) > kActive;
    if (degenerate) {
      ++skipped;
      continue;
    }
    ++cases;
    const sl::Index support = (s.array() > kActive).count();
    const sl::Index nnz = (sl::barycentric_contract(fw.solution).coords().array().abs() > kActive).count();
    matches += support == nnz;
  }
  return {matches == 100, fmt("%d/100 non-degenerate cases match (%d degenerate samples skipped)", matches, skipped)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"lasso/svm optimal values", lasso_svm_values},
      {"pointwise objective preservation", pointwise_preservation},
      {"svm->lasso optimal values", svm_to_lasso_values},
      {"flip/scale/inner positivity", improvement_maps},
      {"soft-margin strong duality", strong_duality},
      {"trivial separator margin", trivial_margin},
      {"sublinear solver", sublinear},
      {"kernel consistency", kernel_consistency},
      {"screening soundness", screening},
      {"support-count correspondence", support_counts},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    const Outcome o = criteria[i].second();
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
