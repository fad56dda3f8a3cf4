#pragma once

#include <Eigen/Core>
#include <vector>

#include "copjm/data.hpp"
#include "copjm/rng.hpp"
#include "copjm/scenario.hpp"

namespace copjm {

// Inverse-transform draw of the candidate event time conditional on
// {T* > s_ij, y_ij, b} through the copula at rho(s_ij). Returns +infinity
// when the survival target is unreachable before the hazard horizon v_K.
double sample_conditional_event_time(const SubjectData& subject, int j,
                                     const Eigen::VectorXd& b, double rho,
                                     const ParameterSet& params, const ModelSpec& spec,
                                     double u);

struct SimulatedSubject {
  SubjectData data;
  Eigen::VectorXd b;          // realized random effects
  double true_event_time = 0; // +infinity when no event occurred by the horizon
  bool dropped_out = false;   // follow-up ended before the last planned visit
};

SimulatedSubject simulate_subject(const Scenario& scenario, SubjectRng& rng);

struct SimulatedDataset {
  Dataset dataset;
  std::vector<SimulatedSubject> truth;
  double event_fraction = 0.0;
  double dropout_fraction = 0.0;
};

SimulatedDataset simulate_dataset(const Scenario& scenario, std::uint64_t replicate);

// Bisection on the constant generating baseline so pilot replicates hit the
// target censoring fraction. Deterministic: pilots reuse fixed seeds.
double calibrate_baseline(const Scenario& scenario, double target_censoring = 0.5,
                          int pilot_replicates = 10);

} // namespace copjm
