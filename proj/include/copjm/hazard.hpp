#pragma once

#include <Eigen/Core>

#include "copjm/data.hpp"
#include "copjm/parameters.hpp"

namespace copjm {

// Mean of y_ij given b: x_ij' beta1 + z_ij' b. j is zero-based.
double linear_predictor_long(const SubjectData& subject, int j,
                             const Eigen::VectorXd& b, const ParameterSet& params);

// The frailty exponent of Eq-style hazards with z(t) = (1) or (1,t) is
// linear in t: w'beta2 + sum_m alpha_m b_m z_m(t) = c0 + gamma * t.
struct HazardExponent {
  double c0 = 0.0;
  double gamma = 0.0;
};

HazardExponent hazard_exponent(const SubjectData& subject, const Eigen::VectorXd& b,
                               const ParameterSet& params, const ModelSpec& spec);

// h(t) = h0(t) exp(c0 + gamma t); piecewise-constant h0 is right-continuous
// on [0, v_K) with the last piece closed at v_K. Throws std::domain_error for
// t outside [0, v_K].
double hazard(const SubjectData& subject, double t, const Eigen::VectorXd& b,
              const ParameterSet& params, const ModelSpec& spec);

// H(s,t) = int_s^t h(u) du in closed form per piece. Requires 0 <= s <= t <= v_K.
double cumulative_hazard(const SubjectData& subject, double s, double t,
                         const Eigen::VectorXd& b, const ParameterSet& params,
                         const ModelSpec& spec);

// Smallest t > s with H(s,t) = target, or +infinity when the target exceeds
// H(s, v_K) (no event before the horizon).
double invert_cumulative_hazard(const SubjectData& subject, double s, double target,
                                const Eigen::VectorXd& b, const ParameterSet& params,
                                const ModelSpec& spec);

} // namespace copjm
