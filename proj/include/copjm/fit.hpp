#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "copjm/correlation.hpp"
#include "copjm/data.hpp"
#include "copjm/likelihood.hpp"
#include "copjm/parameters.hpp"

namespace copjm {

enum class OptimizerChoice { nelder_mead, quasi_newton, quasi_newton_then_nm };

struct FitOptions {
  OptimizerChoice optimizer = OptimizerChoice::quasi_newton_then_nm;
  int quad_nodes = 9;
  double f_tol = 1e-6;
  double x_tol = 1e-5;
  int max_iter = 2000;
  int nm_polish_iter = 400;
  int workers = 1;
  bool compute_vcov = true;
  int warmstart_iter = 300; // budget of the short RJM maximization in initialize
  std::optional<ParameterSet> init; // skip initialize() and start here
};

struct Convergence {
  int iterations = 0;
  double gradient_norm = 0.0;
  double simplex_size = 0.0;
  bool converged = false;
  std::string status; // "ok", "max-iterations", "no-vcov", ...
};

struct FittedModel {
  ModelSpec spec;
  ParameterSet theta_hat;
  Eigen::MatrixXd vcov; // unconstrained (packed) scale; empty when Hessian not PD
  Eigen::VectorXd se;   // natural scale via delta method; empty when no vcov
  std::vector<std::string> names; // natural-scale parameter labels
  double loglik = 0.0, aic = 0.0, bic = 0.0;
  Convergence convergence;
  int quad_nodes = 0;
  int n_subjects = 0;
  std::int64_t clamp_count = 0;

  bool has_vcov() const { return vcov.size() > 0; }
  // eta block of vcov (correlation coefficients are packed last).
  Eigen::MatrixXd eta_covariance() const;
  CorrelationCurve correlation_curve() const;
};

struct InitOptions {
  int quad_nodes = 9;
  int warmstart_iter = 300;
  int workers = 1;
};

// Stage 1: ML linear mixed model for beta1, D, sigma. Stage 2: piecewise-
// exponential proportional hazards for beta2, lambda. Then alpha = 0 with a
// short regular-joint-model maximization; eta starts at exact zeros.
ParameterSet initialize(const Dataset& dataset, const ModelSpec& spec,
                        const InitOptions& opts = {});

FittedModel fit(const Dataset& dataset, const ModelSpec& spec,
                const FitOptions& opts = {});

struct BandPoint {
  double t, rho, lower, upper;
};

// Delta-method pointwise band: r(t) +- 1.96 sd on the Fisher-z scale, then
// tanh back, so the band stays inside (-1,1).
std::vector<BandPoint> correlation_band(const FittedModel& fitted,
                                        const std::vector<double>& t_grid);

struct ModelComparison {
  double delta_aic = 0.0; // aic(a) - aic(b)
  double delta_bic = 0.0;
  double lrt_stat = 0.0;  // 2 (loglik_b - loglik_a); a nested in b
  double lrt_pvalue = 1.0;
  int lrt_df = 0;
};

ModelComparison compare(const FittedModel& nested, const FittedModel& wider);

struct ProfilePoint {
  double nu = 0.0;
  double loglik = 0.0;
  bool ok = false;
  std::string error;
};

struct ProfileResult {
  std::vector<ProfilePoint> points;
  double best_nu = 0.0;
  bool any_ok = false;
};

// Refits the t-copula model at each nu in the grid; failures are recorded and
// the sweep continues.
ProfileResult profile_t_df(const Dataset& dataset, const ModelSpec& spec,
                           const std::vector<double>& df_grid,
                           const FitOptions& opts = {});

} // namespace copjm
