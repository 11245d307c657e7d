#ifndef SVMLASSO_SVMLASSO_HPP
#define SVMLASSO_SVMLASSO_HPP

#include "errors.hpp"
#include "frank_wolfe.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "lasso_pg.hpp"
#include "perceptron.hpp"
#include "problem.hpp"
#include "reductions.hpp"
#include "screening.hpp"
#include "solver_config.hpp"
#include "sublinear.hpp"

#endif  // SVMLASSO_SVMLASSO_HPP
