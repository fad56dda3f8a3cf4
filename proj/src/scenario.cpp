#include "copjm/scenario.hpp"

#include <stdexcept>

namespace copjm {

Eigen::VectorXd Scenario::eta_increasing() {
  Eigen::VectorXd eta(4);
  eta << 0.0, 0.75, 0.65, 1.8;
  return eta;
}

Eigen::VectorXd Scenario::eta_decreasing() {
  Eigen::VectorXd eta(4);
  eta << 1.8, 0.65, 0.75, 0.0;
  return eta;
}

Scenario Scenario::defaults() {
  Scenario sc;
  sc.schedule.clear();
  for (int k = 0; k <= 20; ++k) sc.schedule.push_back(0.5 * k);
  sc.correlation_basis = BSplineBasis(4, 0.0, 10.2);
  sc.eta = eta_increasing();
  sc.beta1.resize(6);
  sc.beta1 << 10.0, -0.5, 1.0, 0.5, 0.5, 1.0;
  sc.beta2.resize(4);
  sc.beta2 << -2.0, -1.0, -1.5, -2.0;
  sc.D.resize(2, 2);
  sc.D << 2.0, -0.1, -0.1, 0.2;
  return sc;
}

ModelSpec Scenario::generating_spec() const {
  ModelSpec spec;
  spec.time_trend = TimeTrend::linear;
  spec.long_covariates = static_cast<int>(beta1.size()) - 2;
  spec.surv_covariates = static_cast<int>(beta2.size());
  spec.random_effects = D.rows() == 1 ? RandomEffects::intercept
                                      : RandomEffects::intercept_slope;
  spec.baseline_knots = {0.0, admin_end};
  spec.copula = copula;
  spec.nu = nu;
  spec.correlation_basis = correlation_basis;
  spec.alpha_shared = true;
  return spec;
}

ParameterSet Scenario::generating_params() const {
  ParameterSet params;
  params.beta1 = beta1;
  params.beta2 = beta2;
  params.alpha = Eigen::VectorXd::Constant(1, alpha);
  params.D = D;
  params.sigma = sigma;
  params.lambda = Eigen::VectorXd::Constant(1, lambda0);
  params.eta = copula == CopulaFamily::independence ? Eigen::VectorXd() : eta;
  params.nu = nu;
  return params;
}

void Scenario::validate() const {
  if (n < 1) throw std::invalid_argument("Scenario: n must be >= 1");
  if (schedule.empty()) throw std::invalid_argument("Scenario: empty visit schedule");
  for (std::size_t k = 1; k < schedule.size(); ++k)
    if (!(schedule[k] > schedule[k - 1]))
      throw std::invalid_argument("Scenario: schedule must be strictly increasing");
  if (!(observation_prob >= 0.0 && observation_prob <= 1.0))
    throw std::invalid_argument("Scenario: observation_prob must lie in [0,1]");
  if (!(censoring_rate > 0.0))
    throw std::invalid_argument("Scenario: censoring rate must be positive");
  if (!(lambda0 > 0.0)) throw std::invalid_argument("Scenario: lambda0 must be positive");
  if (!(admin_end > schedule.back()))
    throw std::invalid_argument("Scenario: administrative end must exceed the schedule");
  if (copula != CopulaFamily::independence && eta.size() != correlation_basis.size())
    throw std::invalid_argument("Scenario: eta length must match the correlation basis");
  generating_params().validate(generating_spec());
}

} // namespace copjm
