#include "copjm/pack.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace copjm {

int packed_dim(const ModelSpec& spec) {
  const int r = spec.re_dim();
  return spec.fixed_dim() + spec.surv_covariates + spec.alpha_dim() +
         r * (r + 1) / 2 + 1 + spec.baseline_pieces() + spec.correlation_dim();
}

Eigen::VectorXd pack(const ParameterSet& params, const ModelSpec& spec) {
  params.validate(spec);
  const int r = spec.re_dim();
  Eigen::VectorXd theta(packed_dim(spec));
  int at = 0;
  theta.segment(at, params.beta1.size()) = params.beta1;
  at += static_cast<int>(params.beta1.size());
  theta.segment(at, params.beta2.size()) = params.beta2;
  at += static_cast<int>(params.beta2.size());
  theta.segment(at, params.alpha.size()) = params.alpha;
  at += static_cast<int>(params.alpha.size());
  Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(params.D).matrixL();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j)
      theta[at++] = i == j ? std::log(L(i, i)) : L(i, j);
  theta[at++] = std::log(params.sigma);
  for (int k = 0; k < params.lambda.size(); ++k)
    theta[at++] = std::log(params.lambda[k]);
  theta.segment(at, params.eta.size()) = params.eta;
  return theta;
}

ParameterSet unpack(const Eigen::VectorXd& theta, const ModelSpec& spec) {
  if (theta.size() != packed_dim(spec))
    throw std::invalid_argument("unpack: packed vector length mismatch");
  const int r = spec.re_dim();
  ParameterSet params;
  int at = 0;
  params.beta1 = theta.segment(at, spec.fixed_dim());
  at += spec.fixed_dim();
  params.beta2 = theta.segment(at, spec.surv_covariates);
  at += spec.surv_covariates;
  params.alpha = theta.segment(at, spec.alpha_dim());
  at += spec.alpha_dim();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j)
      L(i, j) = i == j ? std::exp(theta[at++]) : theta[at++];
  params.D = L * L.transpose();
  params.sigma = std::exp(theta[at++]);
  params.lambda.resize(spec.baseline_pieces());
  for (int k = 0; k < params.lambda.size(); ++k) params.lambda[k] = std::exp(theta[at++]);
  params.eta = theta.segment(at, spec.correlation_dim());
  params.nu = spec.nu;
  return params;
}

Eigen::VectorXd natural_vector(const ParameterSet& params, const ModelSpec& spec) {
  const int r = spec.re_dim();
  Eigen::VectorXd nat(packed_dim(spec));
  int at = 0;
  nat.segment(at, params.beta1.size()) = params.beta1;
  at += static_cast<int>(params.beta1.size());
  nat.segment(at, params.beta2.size()) = params.beta2;
  at += static_cast<int>(params.beta2.size());
  nat.segment(at, params.alpha.size()) = params.alpha;
  at += static_cast<int>(params.alpha.size());
  for (int i = 0; i < r; ++i) nat[at++] = params.D(i, i);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < i; ++j) nat[at++] = params.D(i, j);
  nat[at++] = params.sigma;
  for (int k = 0; k < params.lambda.size(); ++k) nat[at++] = params.lambda[k];
  nat.segment(at, params.eta.size()) = params.eta;
  return nat;
}

std::vector<std::string> parameter_names(const ModelSpec& spec) {
  const int r = spec.re_dim();
  std::vector<std::string> names;
  for (int i = 0; i < spec.fixed_dim(); ++i)
    names.push_back("beta1_" + std::to_string(i));
  for (int i = 0; i < spec.surv_covariates; ++i)
    names.push_back("beta2_" + std::to_string(i + 1));
  if (spec.alpha_dim() == 1) {
    names.push_back("alpha");
  } else {
    for (int i = 0; i < spec.alpha_dim(); ++i)
      names.push_back("alpha_" + std::to_string(i));
  }
  for (int i = 0; i < r; ++i)
    names.push_back("D" + std::to_string(i + 1) + std::to_string(i + 1));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < i; ++j)
      names.push_back("D" + std::to_string(j + 1) + std::to_string(i + 1));
  names.push_back("sigma");
  for (int k = 0; k < spec.baseline_pieces(); ++k)
    names.push_back("lambda_" + std::to_string(k + 1));
  for (int i = 0; i < spec.correlation_dim(); ++i)
    names.push_back("eta_" + std::to_string(i + 1));
  return names;
}

} // namespace copjm
