#pragma once

#include <Eigen/Core>
#include <functional>

#include "copjm/data.hpp"
#include "copjm/fit.hpp"

namespace copjm {

// A subject's information available at the landmark: baseline survival
// covariates plus longitudinal records with times <= landmark. The history
// may be empty (prior-mode prediction).
struct PredictionRequest {
  SubjectData history; // event fields ignored; only w, times, y, X, Z used
  double landmark = 0.0;
  double horizon = 0.0; // u > t
};

// Truncates a full record to the measurements taken at or before the landmark.
SubjectData history_at(const SubjectData& subject, double landmark);

struct EmpiricalBayes {
  Eigen::VectorXd mode;
  bool fallback = false; // optimizer diverged; posterior mean used instead
};

// Mode of f(b | T* > t, Y(t), w; theta_hat): Gaussian prior, longitudinal
// terms, and the copula survival terms through the landmark.
EmpiricalBayes empirical_bayes_mode(const SubjectData& history, double landmark,
                                    const FittedModel& fitted);

// First-order dynamic prediction pi_hat(u | t) at the empirical Bayes mode.
// Under independence (or rho(s_ij) numerically zero) this is exactly
// exp(-H(t,u)). Throws std::runtime_error when the conditioning survival
// probability underflows (subject almost surely dead by t).
double predict_survival(const PredictionRequest& request, const FittedModel& fitted);

} // namespace copjm
