#include "copjm/parameters.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

namespace copjm {

void ParameterSet::validate(const ModelSpec& spec) const {
  const int r = spec.re_dim();
  if (beta1.size() != spec.fixed_dim())
    throw std::invalid_argument("ParameterSet: beta1 dimension mismatch");
  if (beta2.size() != spec.surv_covariates)
    throw std::invalid_argument("ParameterSet: beta2 dimension mismatch");
  if (alpha.size() != spec.alpha_dim())
    throw std::invalid_argument("ParameterSet: alpha dimension mismatch");
  if (D.rows() != r || D.cols() != r)
    throw std::invalid_argument("ParameterSet: D dimension mismatch");
  if (!D.isApprox(D.transpose(), 1e-12))
    throw std::invalid_argument("ParameterSet: D must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(D);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("ParameterSet: D must be positive-definite");
  if (!(sigma > 0.0))
    throw std::invalid_argument("ParameterSet: sigma must be positive");
  if (lambda.size() != spec.baseline_pieces())
    throw std::invalid_argument("ParameterSet: lambda dimension mismatch");
  for (int k = 0; k < lambda.size(); ++k)
    if (!(lambda[k] > 0.0))
      throw std::invalid_argument("ParameterSet: all lambda_k must be positive");
  if (eta.size() != spec.correlation_dim())
    throw std::invalid_argument("ParameterSet: eta dimension mismatch");
  if (spec.copula == CopulaFamily::student_t && !(nu > 2.0))
    throw std::invalid_argument("ParameterSet: t copula needs nu > 2");
}

} // namespace copjm
