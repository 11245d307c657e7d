// Solves a small Lasso directly and through its SVM reduction.

#include <cstdio>

#include <svmlasso/svmlasso.hpp>

int main() {
  namespace sl = svmlasso;
  sl::Matrix A(2, 3);
  A << 1, 0, 0.1,
       0, 1, 0.1;
  sl::Vector b(2);
  b << 2, 0;
  const sl::LassoInstance lasso(sl::ProblemMatrix(A), b);

  sl::SolverConfig cfg;
  cfg.tol = 1e-10;
  const auto pg = sl::solve_lasso_pg(lasso, cfg);

  const auto [svm, meta] = sl::lasso_to_svm(lasso);
  const auto fw = sl::solve_svm_fw(svm, cfg);
  const sl::L1Vector x = sl::barycentric_contract(fw.solution);

  std::printf("lasso optimum (PG):      %.12f\n", pg.objective);
  std::printf("svm optimum (FW):        %.12f\n", fw.objective);
  std::printf("contracted solution:     (%.6f, %.6f, %.6f)\n", x[0], x[1], x[2]);
  std::printf("support vectors / nnz:   %ld / %ld\n", static_cast<long>(fw.solution.support_size()),
              static_cast<long>(x.nnz()));
  return 0;
}
