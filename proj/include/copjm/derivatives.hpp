#pragma once

#include <Eigen/Core>
#include <functional>

namespace copjm {

struct HessianOptions {
  // Per-coordinate step is max(rel_step * |theta_k|, abs_step).
  double rel_step = 1e-4;
  double abs_step = 1e-5;
};

// Central-difference Hessian, symmetrized as (H + H^T)/2. Throws
// std::runtime_error (with the offending point in the message) when f
// returns a non-finite value.
Eigen::MatrixXd numeric_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& theta,
                                const HessianOptions& opts = {});

// Forward-difference gradient; cheap companion used by the optimizer.
Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& theta, double f0,
                                 double rel_step = 1e-7);

} // namespace copjm
