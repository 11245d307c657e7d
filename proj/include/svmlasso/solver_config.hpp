#ifndef SVMLASSO_SOLVER_CONFIG_HPP
#define SVMLASSO_SOLVER_CONFIG_HPP

#include <cstdint>

#include "errors.hpp"

namespace svmlasso {

enum class StepRule { exact_line_search, open_loop };  // open_loop: gamma_k = 2 / (k + 2)

struct SolverConfig {
  double tol = 1e-8;
  std::int64_t max_iter = 100000;
  std::uint64_t seed = 0;
  StepRule step_rule = StepRule::exact_line_search;
  // Frank-Wolfe: allow away steps (linear rate on polytopes). Ignored by the
  // open-loop rule.
  bool away_steps = true;
  // Projected gradient: Nesterov momentum with gradient-based restarts.
  bool accelerate = true;

  void validate() const {
    detail::require(tol > 0.0, "solver tolerance must be positive");
    detail::require(max_iter >= 1, "max_iter must be at least 1");
  }
};

}  // namespace svmlasso

#endif  // SVMLASSO_SOLVER_CONFIG_HPP
