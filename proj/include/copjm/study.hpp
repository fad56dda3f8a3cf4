#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copjm/fit.hpp"
#include "copjm/scenario.hpp"

namespace copjm {

struct StudyModel {
  std::string name;
  CopulaFamily copula = CopulaFamily::gaussian;
  double nu = 4.0;
  bool compute_se = true; // Hessian/vcov per replicate (needed for CP and bands)
};

struct ParamSummary {
  std::string name;
  double truth = std::numeric_limits<double>::quiet_NaN(); // NaN when undefined
  double est = 0.0;  // replicate mean
  double se = 0.0;   // mean model-based SE
  double sd = 0.0;   // empirical SD across replicates (divisor N-1)
  double rmse = 0.0; // divisor N; rmse^2 = bias^2 + sd^2 (N-1)/N
  double cp = 0.0;   // coverage of +-1.96 SE intervals (natural scale)
  double ecp = 0.0;  // coverage of +-1.96 SD intervals
};

struct StudySummary {
  std::string model;
  std::vector<ParamSummary> params;
  std::vector<double> band_grid;     // t values
  std::vector<double> band_coverage; // pointwise coverage of the 95% rho band
  int replicates_ok = 0;
  int replicates_failed = 0;
};

struct StudyOptions {
  int quad_nodes = 9;
  int band_points = 50;
  int workers = 1; // replicate-level parallelism
  FitOptions fit;  // per-fit controls (quad_nodes is overridden)
};

// Simulate N replicates of the scenario, fit every candidate model on each,
// and aggregate Est/SE/SD/RMSE/CP/ECP plus rho(t)-band coverage. Fits of a
// copula model warm-start from the replicate's regular-joint-model fit when
// one appears earlier in the candidate list. Deterministic given the seed.
std::vector<StudySummary> run_study(const Scenario& scenario, int replicates,
                                    const std::vector<StudyModel>& models,
                                    const StudyOptions& opts = {});

} // namespace copjm
