#pragma once

// Shared builders for random (spec, subject, parameters) states used by the
// likelihood, sampler and acceptance tests. The correlation spline is set to
// a constant rho via equal Fisher-z coefficients.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>

#include "copjm/data.hpp"
#include "copjm/model_spec.hpp"
#include "copjm/parameters.hpp"
#include "support/oracles.hpp"

namespace fixtures {

struct LikCase {
  copjm::ModelSpec spec;
  copjm::SubjectData subject;
  copjm::ParameterSet params;
  Eigen::VectorXd b;
};

inline copjm::ModelSpec make_spec(copjm::CopulaFamily copula, int r = 2,
                                  double nu = 4.0, int pieces = 3,
                                  double horizon = 12.0) {
  copjm::ModelSpec spec;
  spec.time_trend = copjm::TimeTrend::linear;
  spec.long_covariates = 1;
  spec.surv_covariates = 1;
  spec.random_effects = r == 1 ? copjm::RandomEffects::intercept
                               : copjm::RandomEffects::intercept_slope;
  spec.baseline_knots = copjm::equally_spaced_knots(horizon, pieces);
  spec.copula = copula;
  spec.nu = nu;
  if (copula != copjm::CopulaFamily::independence)
    spec.correlation_basis = copjm::BSplineBasis(4, 0.0, horizon);
  spec.alpha_shared = true;
  return spec;
}

// Constant correlation rho(t) = rho through equal coefficients on the
// partition-of-unity basis.
inline Eigen::VectorXd constant_rho_eta(const copjm::ModelSpec& spec, double rho) {
  double r = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
  return Eigen::VectorXd::Constant(spec.correlation_dim(), r);
}

inline LikCase make_case(copjm::CopulaFamily copula, double rho, int n_obs,
                         std::uint64_t seed, int r = 2, double nu = 4.0,
                         bool event = true, int pieces = 3) {
  oracles::TestRng rng(seed);
  LikCase c;
  c.spec = make_spec(copula, r, nu, pieces);

  c.params.beta1.resize(3);
  c.params.beta1 << rng.uniform(5.0, 12.0), rng.uniform(-0.8, -0.2), rng.uniform(0.2, 1.5);
  c.params.beta2 = Eigen::VectorXd::Constant(1, rng.uniform(-1.0, -0.2));
  c.params.alpha = Eigen::VectorXd::Constant(1, rng.uniform(-0.7, -0.3));
  if (r == 1) {
    c.params.D = Eigen::MatrixXd::Constant(1, 1, rng.uniform(0.5, 2.5));
  } else {
    c.params.D.resize(2, 2);
    double d11 = rng.uniform(1.0, 2.5), d22 = rng.uniform(0.1, 0.3);
    double d12 = rng.uniform(-0.5, 0.5) * std::sqrt(d11 * d22);
    c.params.D << d11, d12, d12, d22;
  }
  c.params.sigma = rng.uniform(1.0, 2.5);
  c.params.lambda.resize(pieces);
  for (int k = 0; k < pieces; ++k) c.params.lambda[k] = rng.uniform(0.02, 0.15);
  c.params.eta = c.spec.uses_copula() ? constant_rho_eta(c.spec, rho) : Eigen::VectorXd();
  c.params.nu = nu;

  Eigen::VectorXd times(n_obs);
  double t = rng.uniform(0.0, 0.4);
  for (int j = 0; j < n_obs; ++j) {
    times[j] = t;
    t += rng.uniform(0.5, 1.5);
  }
  double event_time = times[n_obs - 1] + rng.uniform(0.3, 1.2);

  c.b.resize(r);
  for (int k = 0; k < r; ++k) c.b[k] = rng.normal() * std::sqrt(c.params.D(k, k));

  Eigen::MatrixXd covs = Eigen::MatrixXd::Constant(n_obs, 1, rng.bernoulli(0.5) ? 1.0 : 0.0);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(1, rng.bernoulli(0.5) ? 1.0 : 0.0);
  Eigen::VectorXd y(n_obs);
  c.subject = copjm::build_subject(c.spec, "fix" + std::to_string(seed), times,
                                   Eigen::VectorXd::Zero(n_obs), covs, w,
                                   std::min(event_time, 11.9), event);
  for (int j = 0; j < n_obs; ++j)
    y[j] = c.subject.X.row(j).dot(c.params.beta1) + c.subject.Z.row(j).dot(c.b) +
           c.params.sigma * rng.normal();
  c.subject.y = y;
  return c;
}

} // namespace fixtures
