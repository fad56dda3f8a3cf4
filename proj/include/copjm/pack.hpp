#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "copjm/parameters.hpp"

namespace copjm {

// Bijection between ParameterSet and an unconstrained vector:
//   beta1, beta2, alpha   identity
//   D                     log-Cholesky (log on the diagonal of L, D = LL')
//   sigma, lambda_k       log
//   eta                   identity (already on the Fisher-z scale)
// Packing order: beta1 | beta2 | alpha | vech(L) row-major | log sigma |
// log lambda | eta. nu is not packed; it is fixed per spec and profiled.
int packed_dim(const ModelSpec& spec);
Eigen::VectorXd pack(const ParameterSet& params, const ModelSpec& spec);
ParameterSet unpack(const Eigen::VectorXd& theta, const ModelSpec& spec);

// Natural-scale report vector and its labels: beta1 | beta2 | alpha |
// D diagonal then off-diagonals | sigma | lambda | eta. Same length as the
// packed vector.
Eigen::VectorXd natural_vector(const ParameterSet& params, const ModelSpec& spec);
std::vector<std::string> parameter_names(const ModelSpec& spec);

} // namespace copjm
