#pragma once

#include <Eigen/Core>
#include <atomic>
#include <cstdint>
#include <vector>

#include "copjm/correlation.hpp"
#include "copjm/data.hpp"
#include "copjm/hazard.hpp"
#include "copjm/parameters.hpp"

namespace copjm {

// Conditional CDF values of the event-time and longitudinal margins at one
// (subject, observation, candidate time) state, with their normal and t
// scores. U values are clamped away from {0,1} before quantile transforms.
struct ConditionalUniforms {
  double u_t = 0.0, u_y = 0.0;
  double z_t = 0.0, z_y = 0.0;
  double w_t = 0.0, w_y = 0.0; // populated for the t copula (unit-scale t scores)
};

inline constexpr double kUniformClampLo = 1e-14;
inline constexpr double kUniformClampHi = 1.0 - 1e-14;
// Below this the copula tilt is numerically indistinguishable from
// independence and the exact survival-ratio expressions are used instead.
inline constexpr double kRhoTiny = 1e-12;

// U_{t|b,s} = 1 - exp(-H(s,t)); requires t >= s.
double conditional_event_cdf(const SubjectData& subject, double t, double s,
                             const Eigen::VectorXd& b, const ParameterSet& params,
                             const ModelSpec& spec);

ConditionalUniforms conditional_uniforms(const SubjectData& subject, int j, double t,
                                         const Eigen::VectorXd& b,
                                         const ParameterSet& params,
                                         const ModelSpec& spec);

// Eq-(5)-style censored pair density of {T* > t, y_ij | T* > s_ij, b} and the
// three companions from the Gaussian and t copulas. j is zero-based; the event
// pairs always use the subject's last observation.
double censored_pair_gaussian(const SubjectData& subject, int j, double t,
                              const Eigen::VectorXd& b, const ParameterSet& params,
                              const ModelSpec& spec);
double event_pair_gaussian(const SubjectData& subject, double t,
                           const Eigen::VectorXd& b, const ParameterSet& params,
                           const ModelSpec& spec);
double censored_pair_t(const SubjectData& subject, int j, double t,
                       const Eigen::VectorXd& b, const ParameterSet& params,
                       const ModelSpec& spec);
double event_pair_t(const SubjectData& subject, double t, const Eigen::VectorXd& b,
                    const ParameterSet& params, const ModelSpec& spec);

// Gaussian law of b_i | y_i. With no observations this is the prior (0, D).
struct PosteriorRE {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

PosteriorRE posterior_re(const SubjectData& subject, const ParameterSet& params);

// log phi_{n_i}(y - X beta1; V_y), V_y = Z D Z' + sigma^2 I.
double marginal_y_logdensity(const SubjectData& subject, const ParameterSet& params);

// f_{T_i}(t | y_i, b): survival to the first measurement, copula-tilted
// interval survivals, and the event/censor terminal factor.
double conditional_event_density_given_y(const SubjectData& subject, double t,
                                         bool event, const Eigen::VectorXd& b,
                                         const ParameterSet& params,
                                         const ModelSpec& spec);

struct LoglikOptions {
  int quad_nodes = 9;   // per random-effect dimension
  bool adaptive = true; // center/scale nodes at the posterior of b | y
  int workers = 1;      // subject-level parallelism in total_loglik
};

double subject_loglik(const SubjectData& subject, const ParameterSet& params,
                      const ModelSpec& spec, const LoglikOptions& opts = {});

double total_loglik(const Dataset& dataset, const ParameterSet& params,
                    const ModelSpec& spec, const LoglikOptions& opts = {});

// Precomputed per-dataset state for repeated likelihood evaluations at many
// parameter points (the optimizer's hot path): baseline-piece decompositions
// of every between-measurement interval, correlation-basis rows at the
// measurement times, and the Gauss-Hermite rule.
class LikelihoodContext {
public:
  LikelihoodContext(const Dataset& dataset, const ModelSpec& spec, LoglikOptions opts);

  double subject_loglik(int subject_index, const ParameterSet& params) const;
  double total_loglik(const ParameterSet& params) const;

  const Dataset& dataset() const { return *dataset_; }
  const ModelSpec& spec() const { return spec_; }
  const LoglikOptions& options() const { return opts_; }
  // Number of U values clamped away from {0,1} since construction.
  std::int64_t clamp_count() const { return clamp_count_.load(); }

private:
  struct Segment {
    int piece;
    double u1, u2;
  };
  struct SubjectWorkspace {
    // interval_segments[0] covers [0, s_1]; entry j+1 covers
    // [s_j, s_{j+1}] and the last entry [s_{n-1}, t_i].
    std::vector<std::vector<Segment>> interval_segments;
    Eigen::MatrixXd corr_rows; // n x l rows B(s_j)' (copula models only)
    int terminal_piece = 0;
  };

  double subject_loglik_ws(const SubjectData& subject, const SubjectWorkspace& ws,
                           const ParameterSet& params) const;

  const Dataset* dataset_;
  ModelSpec spec_;
  LoglikOptions opts_;
  Eigen::VectorXd gh_nodes_, gh_log_weights_;
  std::vector<SubjectWorkspace> workspaces_;
  mutable std::atomic<std::int64_t> clamp_count_{0};

  friend double subject_loglik(const SubjectData&, const ParameterSet&,
                               const ModelSpec&, const LoglikOptions&);
};

} // namespace copjm
