#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"

namespace sl = svmlasso;
using sl::testing::Rng;

namespace {

sl::Vector vec(std::initializer_list<double> v) {
  sl::Vector out(static_cast<sl::Index>(v.size()));
  sl::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

sl::SolverConfig tight(double tol = 1e-12) {
  sl::SolverConfig cfg;
  cfg.tol = tol;
  return cfg;
}

bool contains(const std::vector<sl::Index> &v, sl::Index i) { return std::find(v.begin(), v.end(), i) != v.end(); }

}  // namespace

TEST(ScreenLasso, DominatedColumnDiscarded) {
  sl::Matrix A(2, 3);
  A << 1, 0, 0.1,
       0, 1, 0.1;
  const sl::LassoInstance inst(sl::ProblemMatrix(A), vec({2, 0}));
  const auto exact = sl::testing::brute_force_lasso(A, inst.rhs());
  EXPECT_NEAR(exact.x(2), 0.0, 1e-12);
  EXPECT_NEAR(exact.x(0), 1.0, 1e-12);

  const sl::L1Vector x_ref(vec({0.95, 0.0, 0.0}));
  const double subopt = sl::lasso_gap(inst, x_ref.coords());
  const auto screen = sl::screen_lasso(inst, x_ref, subopt);
  EXPECT_TRUE(contains(screen.discarded, 2));
  EXPECT_TRUE(contains(screen.kept, 0));
}

TEST(ScreenLasso, ExactReferenceDiscardsSlackColumns) {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const auto inst = rng.lasso(6, 5);
    const auto exact = sl::testing::brute_force_lasso(inst.matrix().entries(), inst.rhs());
    if (exact.x.lpNorm<1>() < 1.0 - 1e-9) continue;  // interior optimum: nothing to screen
    // A 1e-20 bound (radius 1e-10) absorbs the rounding in the enumerated optimum.
    const auto screen = sl::screen_lasso(inst, sl::L1Vector(exact.x, 1e-9), 1e-20);
    const sl::Vector corr = (inst.matrix().entries().transpose() * (inst.rhs() - inst.matrix().entries() * exact.x)).cwiseAbs();
    const double top = corr.maxCoeff();
    for (sl::Index j = 0; j < 5; ++j) {
      if (corr(j) < top - 1e-8) { EXPECT_TRUE(contains(screen.discarded, j)); }
      if (corr(j) > top - 1e-12) { EXPECT_TRUE(contains(screen.kept, j)); }
    }
  }
}

TEST(ScreenLasso, HugeSuboptimalityKeepsEverything) {
  Rng rng(72);
  const auto inst = rng.lasso(5, 8);
  const auto screen = sl::screen_lasso(inst, sl::L1Vector::zero(8), 1e6);
  EXPECT_TRUE(screen.discarded.empty());
  EXPECT_EQ(screen.kept.size(), 8u);
}

TEST(ScreenLasso, SoundAndReSolveAgrees) {
  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    const auto inst = rng.lasso(8, 20);
    const auto ref = sl::solve_lasso_pg(inst, tight(1e-4));
    const auto screen = sl::screen_lasso(inst, ref.solution, sl::lasso_gap(inst, ref.solution.coords()));
    const auto full = sl::solve_lasso_pg(inst, tight());
    for (sl::Index j : screen.discarded) { EXPECT_LE(std::abs(full.solution[j]), 1e-9); }
    const auto reduced = sl::solve_lasso_pg(sl::restrict_lasso(inst, screen), tight());
    EXPECT_NEAR(reduced.objective, full.objective, 1e-10);
  }
}

TEST(ScreenLasso, RejectsNegativeBoundAndMismatch) {
  Rng rng(74);
  const auto inst = rng.lasso(3, 4);
  EXPECT_THROW(sl::screen_lasso(inst, sl::L1Vector::zero(4), -1.0), sl::PreconditionViolation);
  EXPECT_THROW(sl::screen_lasso(inst, sl::L1Vector::zero(3), 0.0), sl::DimensionMismatch);
}

TEST(ScreenSvm, DominatedInteriorColumnDiscarded) {
  sl::Matrix A(2, 4);
  A << 1, 0, 2, 3,
       0, 1, 2, 3;
  const sl::SvmInstance inst{sl::ProblemMatrix(A), sl::SvmOrigin::raw};
  const auto fw = sl::solve_svm_fw(inst, tight());
  EXPECT_LE(fw.solution[3], 1e-12);
  const auto screen = sl::screen_svm(inst, fw.solution, sl::objective_gap_bound(inst, fw.solution));
  EXPECT_TRUE(contains(screen.discarded, 3));
  EXPECT_TRUE(contains(screen.kept, 0));
  EXPECT_TRUE(contains(screen.kept, 1));
}

TEST(ScreenSvm, ExactReferenceDiscardsSlackColumns) {
  Rng rng(75);
  for (int t = 0; t < 20; ++t) {
    const auto inst = rng.svm(6, 6);
    const auto exact = sl::testing::brute_force_svm(inst.matrix.entries());
    const auto screen = sl::screen_svm(inst, sl::SimplexVector(exact.x, 1e-9), 1e-20);
    const sl::Vector corr = -(inst.matrix.entries().transpose() * (inst.matrix.entries() * exact.x));
    const double top = corr.maxCoeff();
    for (sl::Index j = 0; j < 6; ++j) {
      if (corr(j) < top - 1e-8) { EXPECT_TRUE(contains(screen.discarded, j)); }
      if (exact.x(j) > 1e-9) { EXPECT_TRUE(contains(screen.kept, j)); }
    }
  }
}

TEST(ScreenSvm, HugeSuboptimalityKeepsEverything) {
  Rng rng(76);
  const auto inst = rng.svm(4, 6);
  EXPECT_TRUE(sl::screen_svm(inst, sl::SimplexVector::uniform(6), 1e6).discarded.empty());
}

TEST(ScreenSvm, ReSolveReproducesOptimum) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto inst = rng.svm(10, 25);
    const auto ref = sl::solve_svm_fw(inst, tight(1e-4));
    const auto screen = sl::screen_svm(inst, ref.solution, sl::objective_gap_bound(inst, ref.solution));
    const auto full = sl::solve_svm_fw(inst, tight());
    const auto reduced = sl::solve_svm_fw(sl::restrict_svm(inst, screen), tight());
    EXPECT_NEAR(reduced.objective, full.objective, 1e-10);
  }
}

TEST(ScreenSvm, TranslationMatchesLassoScreen) {
  Rng rng(78);
  for (int t = 0; t < 20; ++t) {
    const auto inst = rng.lasso(6, 10);
    const auto svm = sl::lasso_to_svm(inst).first;
    const auto ref = sl::solve_lasso_pg(inst, tight(1e-3));
    const double subopt = sl::lasso_gap(inst, ref.solution.coords());
    const auto lasso_screen = sl::screen_lasso(inst, ref.solution, subopt);
    const auto svm_screen = sl::screen_svm(svm, sl::barycentric_expand(ref.solution), subopt, inst.rhs());
    // A Lasso column is discarded iff both of its signed copies are.
    for (sl::Index j = 0; j < 10; ++j) {
      const bool both = contains(svm_screen.discarded, j) && contains(svm_screen.discarded, j + 10);
      EXPECT_EQ(contains(lasso_screen.discarded, j), both) << "column " << j;
    }
  }
}

TEST(Restrict, ScatterRoundTrip) {
  const std::vector<sl::Index> kept{0, 2};
  EXPECT_EQ(sl::scatter_solution(vec({0.4, 0.6}), kept, 4), vec({0.4, 0, 0.6, 0}));
  EXPECT_THROW(sl::scatter_solution(vec({1}), kept, 4), sl::DimensionMismatch);
  EXPECT_THROW(sl::select_columns(sl::ProblemMatrix(sl::Matrix::Identity(2, 2)), {}), sl::PreconditionViolation);
}
