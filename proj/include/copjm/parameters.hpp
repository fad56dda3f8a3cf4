#pragma once

#include <Eigen/Core>

#include "copjm/model_spec.hpp"

namespace copjm {

// The full parameter vector theta of the joint model on the natural scale.
struct ParameterSet {
  Eigen::VectorXd beta1;  // fixed effects, longitudinal (p)
  Eigen::VectorXd beta2;  // regression coefficients, survival (q)
  Eigen::VectorXd alpha;  // association: length 1 (shared) or r
  Eigen::MatrixXd D;      // r x r random-effects covariance, SPD
  double sigma = 1.0;     // residual SD
  Eigen::VectorXd lambda; // K piecewise-constant baseline hazards
  Eigen::VectorXd eta;    // correlation-spline coefficients (empty under independence)
  double nu = 4.0;        // t-copula degrees of freedom, > 2 (fixed during a fit)

  // Association coefficient applied to component m of b.
  double alpha_for(int m) const {
    return alpha.size() == 1 ? alpha[0] : alpha[m];
  }

  // Throws std::invalid_argument when dimensions disagree with the spec or a
  // constraint fails (non-PD D, sigma <= 0, lambda_k <= 0, nu <= 2).
  void validate(const ModelSpec& spec) const;
};

} // namespace copjm
