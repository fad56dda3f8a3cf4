#include "copjm/simulate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "copjm/correlation.hpp"
#include "copjm/hazard.hpp"
#include "copjm/likelihood.hpp"

namespace copjm {

double sample_conditional_event_time(const SubjectData& subject, int j,
                                     const Eigen::VectorXd& b, double rho,
                                     const ParameterSet& params, const ModelSpec& spec,
                                     double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("sample_conditional_event_time: u must lie in (0,1)");
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("sample_conditional_event_time: |rho| must be < 1");
  const double s = subject.times[j];
  double z_y = (subject.y[j] - linear_predictor_long(subject, j, b, params)) / params.sigma;
  if (!std::isfinite(z_y))
    throw std::runtime_error("sample_conditional_event_time: non-finite Z_y state");

  // Solve the copula h-function for the target U_t, then invert the
  // cumulative hazard: H(s,t) = -log(1 - U_t).
  double target_H;
  if (spec.copula == CopulaFamily::independence || std::fabs(rho) < kRhoTiny) {
    target_H = -std::log(u); // survival target u
  } else if (spec.copula == CopulaFamily::gaussian) {
    double z_t = rho * z_y + std::sqrt((1.0 - rho) * (1.0 + rho)) * normal_quantile(1.0 - u);
    target_H = -normal_logcdf(-z_t); // -log(1 - Phi(z_t))
  } else {
    double w_y = t_quantile(std::clamp(normal_cdf(z_y), kUniformClampLo, kUniformClampHi),
                            params.nu);
    double scale = std::sqrt((params.nu + w_y * w_y) * (1.0 - rho) * (1.0 + rho) /
                             (params.nu + 1.0));
    double w_t = rho * w_y - scale * t_quantile(u, params.nu + 1.0);
    target_H = -t_logcdf(-w_t, params.nu); // -log(1 - Psi(w_t; nu))
  }
  if (!std::isfinite(target_H) || target_H < 0.0)
    throw std::runtime_error("sample_conditional_event_time: invalid survival target");
  return invert_cumulative_hazard(subject, s, target_H, b, params, spec);
}

SimulatedSubject simulate_subject(const Scenario& scenario, SubjectRng& rng) {
  const ModelSpec spec = scenario.generating_spec();
  const ParameterSet params = scenario.generating_params();
  const int n_cov = spec.long_covariates;
  const double inf = std::numeric_limits<double>::infinity();

  // Baseline covariates: two Bernoulli(0.5) indicators and categorical
  // (0.3, 0.5, 0.2) factors coded 0/1/2, shared by both sub-models.
  Eigen::VectorXd covs(n_cov);
  for (int c = 0; c < n_cov; ++c) {
    if (c < 2) covs[c] = rng.bernoulli(0.5) ? 1.0 : 0.0;
    else covs[c] = static_cast<double>(rng.categorical({0.3, 0.5, 0.2}));
  }

  // Random effects b ~ N(0, D).
  const int r = spec.re_dim();
  Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(params.D).matrixL();
  Eigen::VectorXd z(r);
  for (int k = 0; k < r; ++k) z[k] = rng.normal();
  Eigen::VectorXd b = L * z;

  // Realized visit schedule: origin always recorded; later visits jittered
  // and kept with the observation probability.
  std::vector<double> times{scenario.schedule.front()};
  for (std::size_t k = 1; k < scenario.schedule.size(); ++k) {
    double jit = rng.uniform(-scenario.jitter, scenario.jitter);
    bool keep = rng.bernoulli(scenario.observation_prob);
    if (keep) times.push_back(scenario.schedule[k] + jit);
  }
  const int m = static_cast<int>(times.size());

  Eigen::VectorXd ts = Eigen::Map<Eigen::VectorXd>(times.data(), m);
  Eigen::VectorXd y(m);
  Eigen::MatrixXd cov_rows = covs.transpose().replicate(m, 1);
  SubjectData provisional =
      build_subject(spec, "tmp", ts, Eigen::VectorXd::Zero(m), cov_rows, covs,
                    scenario.admin_end + 1.0, false);
  for (int j = 0; j < m; ++j)
    y[j] = provisional.X.row(j).dot(params.beta1) + provisional.Z.row(j).dot(b) +
           params.sigma * rng.normal();
  provisional.y = y;

  // Independent censoring, truncated administratively.
  double censor = std::min(rng.exponential(scenario.censoring_rate), scenario.admin_end);

  // Interval walk: from each observed measurement draw the candidate event
  // time conditional on the latest measurement; retain it when it lands
  // before the next realized visit.
  CorrelationCurve curve{scenario.correlation_basis, scenario.eta, std::nullopt};
  double t_star = inf;
  for (int j = 0; j < m; ++j) {
    double rho = spec.uses_copula()
                     ? eval_rho(curve, curve.basis.clamp_to_domain(times[j]))
                     : 0.0;
    double u = rng.uniform();
    double cand = sample_conditional_event_time(provisional, j, b, rho, params, spec, u);
    if (j + 1 < m && cand > times[j + 1]) continue;
    t_star = cand;
    break;
  }

  double t_obs = std::min(t_star, censor);
  bool event = t_star <= censor;

  int n_keep = 0;
  while (n_keep < m && times[n_keep] < t_obs) ++n_keep;

  SimulatedSubject out;
  out.b = b;
  out.true_event_time = t_star;
  out.dropped_out = t_obs < scenario.schedule.back();
  out.data = build_subject(spec, "tmp", ts.head(n_keep), y.head(n_keep),
                           cov_rows.topRows(n_keep), covs, t_obs, event);
  return out;
}

SimulatedDataset simulate_dataset(const Scenario& scenario, std::uint64_t replicate) {
  scenario.validate();
  SimulatedDataset out;
  out.dataset.long_cov_names.clear();
  out.dataset.surv_cov_names.clear();
  const ModelSpec spec = scenario.generating_spec();
  for (int c = 0; c < spec.long_covariates; ++c)
    out.dataset.long_cov_names.push_back("x" + std::to_string(c + 1));
  out.dataset.surv_cov_names = out.dataset.long_cov_names;

  int events = 0, dropouts = 0;
  for (int i = 0; i < scenario.n; ++i) {
    SubjectRng rng(scenario.seed, replicate, static_cast<std::uint64_t>(i));
    SimulatedSubject sim = simulate_subject(scenario, rng);
    sim.data.id = std::to_string(i + 1);
    events += sim.data.event ? 1 : 0;
    dropouts += sim.dropped_out ? 1 : 0;
    out.dataset.subjects.push_back(sim.data);
    sim.data.covariates.resize(0, 0); // truth keeps b and timing only
    out.truth.push_back(std::move(sim));
  }
  out.event_fraction = static_cast<double>(events) / scenario.n;
  out.dropout_fraction = static_cast<double>(dropouts) / scenario.n;
  return out;
}

double calibrate_baseline(const Scenario& scenario, double target_censoring,
                          int pilot_replicates) {
  auto censoring_at = [&](double lambda0) {
    Scenario sc = scenario;
    sc.lambda0 = lambda0;
    double events = 0.0, total = 0.0;
    for (int rep = 0; rep < pilot_replicates; ++rep) {
      auto sim = simulate_dataset(sc, static_cast<std::uint64_t>(rep));
      events += sim.event_fraction * sc.n;
      total += sc.n;
    }
    return 1.0 - events / total;
  };
  // Censoring fraction decreases in lambda0; bisect on the log scale.
  double lo = std::log(1e-3), hi = std::log(1e3);
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    if (censoring_at(std::exp(mid)) > target_censoring) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

} // namespace copjm
