#pragma once

#include <Eigen/Core>

namespace copjm {

// Gauss-Hermite rule in the physicists' convention: weight exp(-x^2),
// exact for polynomials of degree <= 2n-1. Nodes are symmetric about 0
// and weights sum to sqrt(pi).
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

QuadratureRule gauss_hermite(int n);

} // namespace copjm
