#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <optional>

#include "copjm/bspline.hpp"

namespace copjm {

// Time-varying copula correlation on the Fisher-z scale: r(t) = B(t)'eta,
// rho(t) = tanh(r(t)), tau(t) = (2/pi) asin(rho(t)). The tanh link keeps
// rho inside (-1,1) for any finite eta.
struct CorrelationCurve {
  BSplineBasis basis;
  Eigen::VectorXd eta;
  std::optional<Eigen::MatrixXd> eta_covariance; // for delta-method bands
};

double eval_r(const CorrelationCurve& curve, double t);
double eval_rho(const CorrelationCurve& curve, double t);
double eval_tau(const CorrelationCurve& curve, double t);

// tanh rounds to +-1 in doubles for |r| above ~19; keep rho strictly inside
// (-1,1) so 1 - rho^2 never vanishes downstream.
inline double rho_from_r(double r) {
  return std::clamp(std::tanh(r), -(1.0 - 1e-12), 1.0 - 1e-12);
}
inline double tau_from_rho(double rho) { return 2.0 / M_PI * std::asin(rho); }

} // namespace copjm
