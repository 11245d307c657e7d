// Command-line front end: load instances, run solvers, reductions and
// screens, and write key-value reports.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 no convergence within --max-iter.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include <svmlasso/svmlasso.hpp>

namespace sl = svmlasso;
namespace io = svmlasso::io;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;
constexpr int kNotConverged = 3;

struct Options {
  std::string matrix;
  std::string rhs;
  std::string labeled;
  std::string out;
  std::string direction;
  std::string only_kept;
  std::string kernel = "linear";
  std::string solver = "fw";
  std::string out_matrix;
  std::string out_rhs;
  double radius = 1.0;
  double C = 1.0;
  double offset_scale = 0.0;
  double epsilon = 0.1;
  double ref_tol = 1e-4;
  double bigD_eta = 0.01;
  int repetitions = 5;
  int random_dim = 0;
  int random_cols = 0;
  int bench_instances = 10;
  sl::SolverConfig cfg;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const io::Report &report, const Options &opt) {
  if (opt.out.empty())
    std::cout << report.render();
  else
    report.write(opt.out);
}

void common_fields(io::Report &r, const std::string &command, const Options &opt) {
  r.set("command", command);
  if (!opt.matrix.empty()) r.set("matrix", opt.matrix);
  if (!opt.rhs.empty()) r.set("rhs", opt.rhs);
  if (!opt.labeled.empty()) r.set("labeled", opt.labeled);
  r.set("tol", opt.cfg.tol);
  r.set("max_iter", opt.cfg.max_iter);
  r.set("seed", opt.cfg.seed);
}

sl::LassoInstance load_lasso(const Options &opt) {
  if (opt.matrix.empty() || opt.rhs.empty()) throw sl::PreconditionViolation("--matrix and --rhs are required");
  return io::read_lasso(opt.matrix, opt.rhs, opt.radius);
}

sl::SvmInstance load_svm(const Options &opt) {
  if (opt.matrix.empty()) throw sl::PreconditionViolation("--matrix is required");
  return io::read_svm(opt.matrix);
}

// Random instance with entries uniform in [-1, 1], for self-contained checks.
sl::LassoInstance random_lasso(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sl::Matrix A = sl::Matrix::NullaryExpr(d, n, [&]() { return u(rng); });
  sl::Vector b = sl::Vector::NullaryExpr(d, [&]() { return u(rng); });
  return sl::LassoInstance(sl::ProblemMatrix(std::move(A)), std::move(b));
}

int status(bool converged) { return converged ? kOk : kNotConverged; }

// Lasso solve in original coordinates, optionally on a screened column set.
int cmd_solve_lasso(const Options &opt) {
  Timer timer;
  const sl::LassoInstance full = load_lasso(opt);
  const sl::LassoInstance normalized = sl::normalize_radius(full);
  std::vector<sl::Index> kept;
  sl::LassoInstance target = normalized;
  if (!opt.only_kept.empty()) {
    kept = io::Report::read(opt.only_kept).get_indices("kept");
    sl::ScreeningReport screen;
    screen.kept = kept;
    target = sl::restrict_lasso(normalized, screen);
  }
  const auto rep = sl::solve_lasso_pg(target, opt.cfg);
  sl::Vector u = rep.solution.coords();
  if (!kept.empty()) u = sl::scatter_solution(u, kept, full.size());
  const sl::Vector x = sl::denormalize_solution(u, full.radius());

  io::Report r;
  common_fields(r, "solve-lasso", opt);
  r.set("radius", full.radius());
  if (!kept.empty()) r.set_indices("kept", kept);
  r.set("n", static_cast<long long>(full.size()));
  r.set("objective", (full.matrix().entries() * x - full.rhs()).squaredNorm());
  r.set("gap", sl::lasso_gap(normalized, u));
  r.set("iterations", rep.iterations);
  r.set("converged", rep.converged);
  r.set("nnz", static_cast<long long>((x.array() != 0.0).count()));
  r.set_sparse("solution", x);
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return status(rep.converged);
}

int cmd_solve_svm(const Options &opt) {
  Timer timer;
  const sl::SvmInstance inst = load_svm(opt);
  io::Report r;
  common_fields(r, "solve-svm", opt);
  r.set("solver", opt.solver);
  r.set("n", static_cast<long long>(inst.size()));
  bool converged = true;
  if (opt.solver == "fw") {
    const auto rep = sl::solve_svm_fw(inst, opt.cfg);
    const sl::Vector w = inst.matrix.entries() * rep.solution.coords();
    r.set("objective", rep.objective);
    r.set("gap", rep.gap);
    r.set("duality_gap", sl::duality_gap(inst, rep.solution));
    r.set("iterations", rep.iterations);
    r.set("converged", rep.converged);
    r.set("support_size", static_cast<long long>(rep.solution.support_size()));
    if (w.norm() > 0.0) r.set("margin", sl::margin(inst, w).margin);
    r.set_sparse("solution", rep.solution.coords());
    converged = rep.converged;
  } else if (opt.solver == "perceptron") {
    const auto sep = sl::perceptron(inst, opt.cfg);
    r.set("margin", sep.margin);
    r.set_vector("direction", sep.direction);
  } else {
    throw sl::PreconditionViolation("--solver must be fw or perceptron");
  }
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return status(converged);
}

int cmd_solve_svm_dual(const Options &opt) {
  Timer timer;
  if (opt.labeled.empty()) throw sl::PreconditionViolation("--labeled is required");
  sl::LabeledData data = io::read_labeled(opt.labeled, opt.C);
  if (opt.offset_scale > 0.0) data = sl::augment_offset(data, opt.offset_scale);
  const sl::SvmInstance dual = sl::soft_margin_dual(data);
  const auto rep = sl::solve_svm_fw(dual, opt.cfg);
  const sl::SoftMarginPrimal primal = sl::soft_margin_primal(data, rep.solution);
  const sl::SeparatorReport trivial = sl::trivial_separator(data.size(), data.C(), data.dim());

  io::Report r;
  common_fields(r, "solve-svm-dual", opt);
  r.set("C", data.C());
  r.set("offset_scale", opt.offset_scale);
  r.set("n", static_cast<long long>(data.size()));
  r.set("dual_objective", rep.objective);
  r.set("gap", rep.gap);
  r.set("primal_value", primal.value);
  r.set("rho", primal.rho);
  r.set("iterations", rep.iterations);
  r.set("converged", rep.converged);
  r.set("support_size", static_cast<long long>(rep.solution.support_size()));
  r.set("trivial_margin", sl::margin(dual, trivial.direction).margin);
  r.set_vector("w", primal.w);
  r.set_sparse("alpha", rep.solution.coords());
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return status(rep.converged);
}

// A weakly-separating direction from a Frank-Wolfe solve: w = A x.
sl::SeparatorReport separator_from_fw(const sl::SvmInstance &inst, const sl::SolverConfig &cfg) {
  const auto rep = sl::solve_svm_fw(inst, cfg);
  const sl::Vector w = inst.matrix.entries() * rep.solution.coords();
  if (w.norm() == 0.0) throw sl::PreconditionViolation("instance is not separable (optimal A x = 0)");
  return sl::margin(inst, w);
}

int cmd_reduce(const Options &opt) {
  Timer timer;
  io::Report r;
  common_fields(r, "reduce", opt);
  r.set("direction", opt.direction);
  if (opt.direction == "lasso-to-svm") {
    const sl::LassoInstance inst = sl::normalize_radius(load_lasso(opt));
    const auto [svm, meta] = sl::lasso_to_svm(inst);
    if (opt.out_matrix.empty()) throw sl::PreconditionViolation("--out-matrix is required");
    io::write_matrix_csv(opt.out_matrix, svm.matrix.entries());
    r.set("out_matrix", opt.out_matrix);
    r.set("radius", opt.radius);
    r.set("n", static_cast<long long>(svm.size()));
  } else if (opt.direction == "svm-to-lasso") {
    const sl::SvmInstance inst = load_svm(opt);
    const sl::SeparatorReport sep = separator_from_fw(inst, opt.cfg);
    const double bigD = sl::estimate_bigD(inst, opt.bigD_eta);
    const auto [lasso, meta] = sl::svm_to_lasso(inst, sep, bigD);
    if (opt.out_matrix.empty() || opt.out_rhs.empty())
      throw sl::PreconditionViolation("--out-matrix and --out-rhs are required");
    io::write_matrix_csv(opt.out_matrix, lasso.matrix().entries());
    io::write_vector(opt.out_rhs, lasso.rhs());
    r.set("out_matrix", opt.out_matrix);
    r.set("out_rhs", opt.out_rhs);
    r.set("sigma", *meta.sigma);
    r.set("bigD", *meta.bigD);
    r.set_vector("separator", *meta.w);
    r.set("cone_separation", sl::check_cone_separation(inst, sep, bigD));
  } else {
    throw sl::PreconditionViolation("--direction must be lasso-to-svm or svm-to-lasso");
  }
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return kOk;
}

// Solves both sides of a reduction and compares optimal values. Inner solves
// run two orders of magnitude tighter than the tolerance being checked.
int cmd_verify_equivalence(const Options &opt) {
  Timer timer;
  sl::SolverConfig inner = opt.cfg;
  inner.tol = opt.cfg.tol * 1e-2;
  io::Report r;
  common_fields(r, "verify-equivalence", opt);
  r.set("direction", opt.direction);
  double delta = 0.0;
  double pointwise = 0.0;
  bool converged = true;

  if (opt.direction == "lasso-to-svm") {
    const sl::LassoInstance inst =
        opt.random_dim > 0 ? random_lasso(opt.random_dim, opt.random_cols, opt.cfg.seed) : sl::normalize_radius(load_lasso(opt));
    const auto [svm, meta] = sl::lasso_to_svm(inst);
    const auto lasso_rep = sl::solve_lasso_pg(inst, inner);
    const auto svm_rep = sl::solve_svm_fw(svm, inner);
    delta = std::abs(lasso_rep.objective - svm_rep.objective);
    // Objective preservation at the solver's own point.
    pointwise = std::abs(lasso_rep.objective - sl::svm_objective(svm, sl::barycentric_expand(lasso_rep.solution)));
    converged = lasso_rep.converged && svm_rep.converged;
    r.set("lasso_objective", lasso_rep.objective);
    r.set("svm_objective", svm_rep.objective);
  } else if (opt.direction == "svm-to-lasso") {
    const sl::SvmInstance inst = opt.random_dim > 0
                                     ? sl::soft_margin_dual(sl::LabeledData(
                                           random_lasso(opt.random_dim, opt.random_cols, opt.cfg.seed).matrix().entries(),
                                           sl::Vector::Ones(opt.random_cols), opt.C))
                                     : load_svm(opt);
    const auto svm_rep = sl::solve_svm_fw(inst, inner);
    const sl::SeparatorReport sep = separator_from_fw(inst, inner);
    const auto [lasso, meta] = sl::svm_to_lasso(inst, sep, sl::estimate_bigD(inst, opt.bigD_eta));
    const auto lasso_rep = sl::solve_lasso_pg(lasso, inner);
    delta = std::abs(lasso_rep.objective - svm_rep.objective);
    if (lasso_rep.solution.is_nonnegative() && lasso_rep.solution.l1_norm() > 0.0) {
      const sl::SimplexVector x = sl::scale_to_simplex(lasso, lasso_rep.solution);
      pointwise = std::abs(sl::svm_objective(inst, x) - sl::lasso_objective(lasso, sl::L1Vector(x.coords())));
    }
    converged = lasso_rep.converged && svm_rep.converged;
    r.set("lasso_objective", lasso_rep.objective);
    r.set("svm_objective", svm_rep.objective);
    r.set("sigma", *meta.sigma);
  } else {
    throw sl::PreconditionViolation("--direction must be lasso-to-svm or svm-to-lasso");
  }
  if (opt.random_dim > 0) {
    r.set("random_dim", opt.random_dim);
    r.set("random_cols", opt.random_cols);
  }
  const bool ok = delta <= opt.cfg.tol;
  r.set("delta_objective", delta);
  r.set("pointwise_delta", pointwise);
  r.set("converged", converged);
  r.set("verified", ok);
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  if (!converged) return kNotConverged;
  return ok ? kOk : kVerificationFailure;
}

void screening_fields(io::Report &r, const sl::ScreeningReport &s) {
  r.set("radius_used", s.radius_used);
  r.set("reference_objective", s.reference_objective);
  r.set("kept_count", static_cast<long long>(s.kept.size()));
  r.set("discarded_count", static_cast<long long>(s.discarded.size()));
  r.set_indices("kept", s.kept);
  r.set_indices("discarded", s.discarded);
}

// The reference point comes from a loose solve at --ref-tol; its certified
// gap is the suboptimality bound.
int cmd_screen_lasso(const Options &opt) {
  Timer timer;
  const sl::LassoInstance inst = sl::normalize_radius(load_lasso(opt));
  sl::SolverConfig ref = opt.cfg;
  ref.tol = opt.ref_tol;
  const auto rep = sl::solve_lasso_pg(inst, ref);
  const double subopt = sl::lasso_gap(inst, rep.solution.coords());
  const auto screen = sl::screen_lasso(inst, rep.solution, subopt);
  io::Report r;
  common_fields(r, "screen-lasso", opt);
  r.set("radius", opt.radius);
  r.set("ref_tol", opt.ref_tol);
  r.set("suboptimality_bound", subopt);
  screening_fields(r, screen);
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return kOk;
}

int cmd_screen_svm(const Options &opt) {
  Timer timer;
  const sl::SvmInstance inst = load_svm(opt);
  sl::SolverConfig ref = opt.cfg;
  ref.tol = opt.ref_tol;
  const auto rep = sl::solve_svm_fw(inst, ref);
  const double subopt = sl::objective_gap_bound(inst, rep.solution);
  const auto screen = sl::screen_svm(inst, rep.solution, subopt);
  io::Report r;
  common_fields(r, "screen-svm", opt);
  r.set("ref_tol", opt.ref_tol);
  r.set("suboptimality_bound", subopt);
  screening_fields(r, screen);
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return kOk;
}

// With --rhs the oracle serves the reduced Lasso matrix (2n columns);
// otherwise it serves the SVM matrix as given.
int cmd_solve_sublinear(const Options &opt) {
  Timer timer;
  std::optional<sl::EntryOracle> oracle;
  double max_norm = 0.0;
  if (!opt.rhs.empty()) {
    const sl::LassoInstance inst = sl::normalize_radius(load_lasso(opt));
    const auto [svm, meta] = sl::lasso_to_svm(inst);
    max_norm = svm.matrix.column_norms().maxCoeff();
    oracle.emplace(svm.matrix.rows(), svm.matrix.cols(),
                   [A = svm.matrix.entries()](sl::Index i, sl::Index j) { return A(i, j); });
  } else {
    const sl::SvmInstance inst = load_svm(opt);
    max_norm = inst.matrix.column_norms().maxCoeff();
    oracle.emplace(inst.matrix.rows(), inst.matrix.cols(),
                   [A = inst.matrix.entries()](sl::Index i, sl::Index j) { return A(i, j); });
  }
  sl::SublinearOptions so;
  so.epsilon = opt.epsilon;
  so.repetitions = opt.repetitions;
  so.norm_bound = max_norm > 0.0 ? max_norm : 1.0;
  const auto rep = sl::solve_sublinear(*oracle, so, opt.cfg);

  io::Report r;
  common_fields(r, "solve-sublinear", opt);
  r.set("epsilon", rep.epsilon);
  r.set("repetitions", rep.repetitions);
  r.set("iterations", rep.iterations);
  r.set("rows", static_cast<long long>(oracle->rows()));
  r.set("cols", static_cast<long long>(oracle->cols()));
  r.set("norm_bound", so.norm_bound);
  r.set("margin", rep.margin_estimate);
  r.set("best_repetition", rep.best_repetition);
  r.set("entries_queried", static_cast<unsigned long long>(rep.entries_queried));
  r.set("verification_entries", static_cast<unsigned long long>(rep.verification_entries));
  r.set_vector("direction", rep.direction);
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return kOk;
}

int cmd_kernel_lasso(const Options &opt) {
  Timer timer;
  const sl::LassoInstance inst = load_lasso(opt);
  if (inst.radius() != 1.0) throw sl::PreconditionViolation("kernel-lasso supports --radius 1 only");
  const sl::KernelSpec spec = io::parse_kernel_spec(opt.kernel);
  const auto gram = sl::kernel_lasso_gram(inst.matrix(), inst.rhs(), spec);
  const auto sol = sl::solve_kernel_lasso(gram, opt.cfg);
  io::Report r;
  common_fields(r, "kernel-lasso", opt);
  r.set("kernel", opt.kernel);
  r.set("min_eigenvalue", gram.min_eigenvalue());
  r.set("objective", sol.report.objective);
  r.set("gap", sol.report.gap);
  r.set("iterations", sol.report.iterations);
  r.set("converged", sol.report.converged);
  r.set_sparse("coefficients", sol.coefficients);
  r.set_sparse("simplex_solution", sol.report.solution.coords());
  r.set("timing_seconds", timer.seconds());
  emit(r, opt);
  return status(sol.report.converged);
}

// Random lasso instances solved by PG and by FW on the reduction.
int cmd_bench(const Options &opt) {
  const int d = opt.random_dim > 0 ? opt.random_dim : 50;
  const int n = opt.random_cols > 0 ? opt.random_cols : 50;
  io::Report r;
  common_fields(r, "bench", opt);
  r.set("random_dim", d);
  r.set("random_cols", n);
  r.set("instances", opt.bench_instances);
  double max_delta = 0.0, pg_time = 0.0, fw_time = 0.0;
  bool converged = true;
  for (int k = 0; k < opt.bench_instances; ++k) {
    const sl::LassoInstance inst = random_lasso(d, n, opt.cfg.seed + static_cast<std::uint64_t>(k));
    const auto svm = sl::lasso_to_svm(inst).first;
    Timer t1;
    const auto pg = sl::solve_lasso_pg(inst, opt.cfg);
    pg_time += t1.seconds();
    Timer t2;
    const auto fw = sl::solve_svm_fw(svm, opt.cfg);
    fw_time += t2.seconds();
    max_delta = std::max(max_delta, std::abs(pg.objective - fw.objective));
    converged = converged && pg.converged && fw.converged;
  }
  r.set("max_delta_objective", max_delta);
  r.set("converged", converged);
  r.set("timing_pg_seconds", pg_time);
  r.set("timing_fw_seconds", fw_time);
  emit(r, opt);
  return status(converged);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"SVM / Lasso equivalence toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto solver_flags = [&](CLI::App *sub) {
    sub->add_option("--tol", opt.cfg.tol, "Solver tolerance")->capture_default_str();
    sub->add_option("--max-iter", opt.cfg.max_iter, "Iteration limit")->capture_default_str();
    sub->add_option("--seed", opt.cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", opt.out, "Report path (default: stdout)");
  };
  auto lasso_flags = [&](CLI::App *sub, bool rhs_required) {
    sub->add_option("--matrix", opt.matrix, "Matrix CSV")->check(CLI::ExistingFile);
    auto *rhs = sub->add_option("--rhs", opt.rhs, "Right-hand side, one value per line")->check(CLI::ExistingFile);
    if (rhs_required) rhs->required();
    sub->add_option("--radius", opt.radius, "l1-ball radius")->capture_default_str();
  };

  std::map<std::string, std::function<int(const Options &)>> handlers;
  auto add = [&](const std::string &name, const std::string &help, std::function<int(const Options &)> fn) {
    CLI::App *sub = app.add_subcommand(name, help);
    solver_flags(sub);
    handlers[name] = std::move(fn);
    return sub;
  };

  auto *solve_lasso = add("solve-lasso", "Projected gradient on the constrained Lasso", cmd_solve_lasso);
  lasso_flags(solve_lasso, true);
  solve_lasso->add_option("--only-kept", opt.only_kept, "Screening report; solve on its kept columns")
      ->check(CLI::ExistingFile);

  auto *solve_svm = add("solve-svm", "Simplex-constrained SVM", cmd_solve_svm);
  solve_svm->add_option("--matrix", opt.matrix, "Matrix CSV")->required()->check(CLI::ExistingFile);
  solve_svm->add_option("--solver", opt.solver, "fw or perceptron")->capture_default_str();

  auto *dual = add("solve-svm-dual", "Squared-loss soft-margin SVM through its simplex dual", cmd_solve_svm_dual);
  dual->add_option("--labeled", opt.labeled, "Labeled points file")->required()->check(CLI::ExistingFile);
  dual->add_option("--C", opt.C, "Regularization parameter")->capture_default_str();
  dual->add_option("--offset-scale", opt.offset_scale, "Append a constant feature of this value (0: none)")
      ->capture_default_str();

  auto *reduce = add("reduce", "Write a reduced instance", cmd_reduce);
  lasso_flags(reduce, false);
  reduce->add_option("--direction", opt.direction, "lasso-to-svm or svm-to-lasso")->required();
  reduce->add_option("--out-matrix", opt.out_matrix, "Reduced matrix CSV");
  reduce->add_option("--out-rhs", opt.out_rhs, "Reduced right-hand side");
  reduce->add_option("--bigD-eta", opt.bigD_eta, "Slack for the column-norm bound")->capture_default_str();

  auto *verify = add("verify-equivalence", "Solve both sides of a reduction and compare", cmd_verify_equivalence);
  lasso_flags(verify, false);
  verify->add_option("--direction", opt.direction, "lasso-to-svm or svm-to-lasso")->required();
  verify->add_option("--random-dim", opt.random_dim, "Generate a random instance with this many rows");
  verify->add_option("--random-cols", opt.random_cols, "Columns of the random instance");
  verify->add_option("--C", opt.C, "Regularization for random svm-to-lasso instances")->capture_default_str();
  verify->add_option("--bigD-eta", opt.bigD_eta, "Slack for the column-norm bound")->capture_default_str();

  auto *screen_lasso = add("screen-lasso", "Safe screening for the Lasso", cmd_screen_lasso);
  lasso_flags(screen_lasso, true);
  screen_lasso->add_option("--ref-tol", opt.ref_tol, "Tolerance of the reference solve")->capture_default_str();

  auto *screen_svm = add("screen-svm", "Safe screening for the SVM", cmd_screen_svm);
  screen_svm->add_option("--matrix", opt.matrix, "Matrix CSV")->required()->check(CLI::ExistingFile);
  screen_svm->add_option("--ref-tol", opt.ref_tol, "Tolerance of the reference solve")->capture_default_str();

  auto *sublinear = add("solve-sublinear", "Sampled primal-dual solver over an entry oracle", cmd_solve_sublinear);
  lasso_flags(sublinear, false);
  sublinear->add_option("--epsilon", opt.epsilon, "Target accuracy")->capture_default_str();
  sublinear->add_option("--repetitions", opt.repetitions, "Amplification repetitions")->capture_default_str();

  auto *kernel = add("kernel-lasso", "Kernelized Lasso through the Gram form", cmd_kernel_lasso);
  lasso_flags(kernel, true);
  kernel->add_option("--kernel", opt.kernel, "linear | poly:DEG:COEF0 | rbf:GAMMA | precomputed:PATH")
      ->capture_default_str();

  auto *bench = add("bench", "Time PG against FW on random instances", cmd_bench);
  bench->add_option("--random-dim", opt.random_dim, "Rows");
  bench->add_option("--random-cols", opt.random_cols, "Columns");
  bench->add_option("--instances", opt.bench_instances, "Number of instances")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    opt.cfg.validate();
    for (const auto *sub : app.get_subcommands()) return handlers.at(sub->get_name())(opt);
  } catch (const sl::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
