#pragma once

#include <Eigen/Core>
#include <functional>

namespace copjm {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
  double f_tol = 1e-6; // absolute change in the objective
  double x_tol = 1e-5; // max-norm change in the point
  int max_iter = 2000;
  double grad_step = 1e-7; // relative forward-difference step
};

struct OptimResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0; // quasi-Newton only
  double simplex_size = 0.0;  // Nelder-Mead only
};

// BFGS with forward-difference gradients and Armijo backtracking. Objective
// values that are non-finite are treated as +infinity by the line search.
OptimResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts = {});

// Standard Nelder-Mead simplex; accepted moves never increase the best value.
OptimResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                 const OptimOptions& opts = {});

} // namespace copjm
