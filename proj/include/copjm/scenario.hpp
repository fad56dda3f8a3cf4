#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "copjm/model_spec.hpp"
#include "copjm/parameters.hpp"

namespace copjm {

// Data-generating design of the Monte Carlo studies: up to 21 visits at
// 0, 0.5, ..., 10 with +-0.2 uniform jitter off the origin, each non-origin
// visit recorded with probability 0.9 (i.e. 10% of planned visits missing;
// the origin is always recorded so every subject carries a measurement),
// exponential censoring of rate 0.011 truncated administratively at t = 11.
struct Scenario {
  int n = 200;
  std::vector<double> schedule;    // planned visit times
  double jitter = 0.2;             // uniform(-jitter, jitter) off-origin
  double observation_prob = 0.9;   // probability a non-origin visit is recorded
  double censoring_rate = 0.011;
  double admin_end = 11.0;

  CopulaFamily copula = CopulaFamily::gaussian; // generating copula
  double nu = 4.0;                              // when copula == student_t
  BSplineBasis correlation_basis;               // basis for the true r(t)
  Eigen::VectorXd eta;                          // true correlation coefficients

  Eigen::VectorXd beta1; // (intercept, slope, 4 covariates)
  Eigen::VectorXd beta2; // 4 covariates
  double alpha = -0.5;
  Eigen::MatrixXd D;
  double sigma = 2.0;
  // Constant generating baseline hazard; the default is calibrated by
  // calibrate_baseline() to give ~50% censoring under the default design.
  double lambda0 = 5.137178;

  std::uint64_t seed = 1;

  static Scenario defaults();          // increasing-correlation Gaussian design
  static Eigen::VectorXd eta_increasing(); // (0, 0.75, 0.65, 1.8)
  static Eigen::VectorXd eta_decreasing(); // (1.8, 0.65, 0.75, 0), per the tables

  ModelSpec generating_spec() const;
  ParameterSet generating_params() const;
  void validate() const;
};

} // namespace copjm
