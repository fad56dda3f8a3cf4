#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "copjm/model_spec.hpp"

namespace copjm {

// One subject's observed record: longitudinal design rows are prebuilt from
// the model spec so the likelihood code never rebuilds them.
struct SubjectData {
  std::string id;
  Eigen::VectorXd times; // s_i, strictly increasing, all >= 0
  Eigen::VectorXd y;     // responses aligned to times
  Eigen::MatrixXd X;     // n_i x p fixed-effect rows x_i(s_ij)
  Eigen::MatrixXd Z;     // n_i x r random-effect rows z_i(s_ij)
  Eigen::MatrixXd covariates; // n_i x c raw longitudinal covariates (for IO echo)
  Eigen::VectorXd w;     // baseline survival covariates (q)
  double event_time = 0.0; // T_i = min(C_i, T_i*)
  bool event = false;      // delta_i

  int n_obs() const { return static_cast<int>(times.size()); }

  // Enforces n_i >= 1, strictly increasing nonnegative times, and the strict
  // ordering s_{i,n_i} < t_i. Throws std::invalid_argument naming the id.
  void validate() const;
};

struct Dataset {
  std::vector<SubjectData> subjects;
  std::vector<std::string> long_cov_names; // covariate column names, in order
  std::vector<std::string> surv_cov_names;

  int n_subjects() const { return static_cast<int>(subjects.size()); }
  double max_event_time() const;
  void validate() const;
};

// Builds a SubjectData from raw ingestion rows, constructing X and Z from the
// spec's time trend and random-effect structure.
SubjectData build_subject(const ModelSpec& spec, std::string id,
                          const Eigen::VectorXd& times, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& long_covariates,
                          const Eigen::VectorXd& surv_covariates,
                          double event_time, bool event);

} // namespace copjm
