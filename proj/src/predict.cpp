#include "copjm/predict.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "copjm/distributions.hpp"
#include "copjm/hazard.hpp"
#include "copjm/likelihood.hpp"
#include "copjm/optimize.hpp"

namespace copjm {

namespace {

// log f(b, data-through-landmark): Gaussian prior + longitudinal densities +
// the conditional event part with the subject treated as censored at the
// landmark.
double log_joint_at(const SubjectData& subject, double landmark,
                    const Eigen::VectorXd& b, const ParameterSet& params,
                    const ModelSpec& spec, const Eigen::LLT<Eigen::MatrixXd>& D_llt,
                    double D_logdet) {
  const int r = spec.re_dim();
  double lp = -0.5 * (r * kLogTwoPi + D_logdet + b.dot(D_llt.solve(b)));
  for (int j = 0; j < subject.n_obs(); ++j) {
    double z = (subject.y[j] - linear_predictor_long(subject, j, b, params)) / params.sigma;
    lp += normal_logpdf(z) - std::log(params.sigma);
  }
  if (subject.n_obs() == 0)
    return lp - cumulative_hazard(subject, 0.0, landmark, b, params, spec);
  SubjectData censored = subject;
  censored.event_time = landmark;
  censored.event = false;
  return lp + std::log(conditional_event_density_given_y(censored, landmark, false, b,
                                                         params, spec));
}

} // namespace

SubjectData history_at(const SubjectData& subject, double landmark) {
  SubjectData h = subject;
  int keep = 0;
  while (keep < subject.n_obs() && subject.times[keep] <= landmark) ++keep;
  h.times = subject.times.head(keep);
  h.y = subject.y.head(keep);
  h.X = subject.X.topRows(keep);
  h.Z = subject.Z.topRows(keep);
  if (subject.covariates.rows() >= keep) h.covariates = subject.covariates.topRows(keep);
  h.event_time = landmark;
  h.event = false;
  return h;
}

EmpiricalBayes empirical_bayes_mode(const SubjectData& history, double landmark,
                                    const FittedModel& fitted) {
  const ParameterSet& params = fitted.theta_hat;
  const ModelSpec& spec = fitted.spec;
  if (history.n_obs() > 0 && !(history.times[history.n_obs() - 1] <= landmark))
    throw std::invalid_argument("empirical_bayes_mode: history extends past the landmark");

  EmpiricalBayes out;
  PosteriorRE post = posterior_re(history, params);
  out.mode = post.mean;

  Eigen::LLT<Eigen::MatrixXd> D_llt(params.D);
  double D_logdet = 2.0 * D_llt.matrixL().toDenseMatrix().diagonal().array().log().sum();

  // With no frailty and no copula the posterior is exactly Gaussian and the
  // mode equals the posterior mean; skip the optimizer.
  bool alpha_zero = params.alpha.cwiseAbs().maxCoeff() == 0.0;
  if (alpha_zero && !spec.uses_copula()) return out;

  Objective neg_logpost = [&](const Eigen::VectorXd& b) {
    return -log_joint_at(history, landmark, b, params, spec, D_llt, D_logdet);
  };
  OptimOptions oo;
  oo.f_tol = 1e-10;
  oo.x_tol = 1e-8;
  oo.max_iter = 200;
  auto res = minimize_bfgs(neg_logpost, post.mean, oo);
  if (std::isfinite(res.f) && res.f <= neg_logpost(post.mean)) {
    out.mode = res.x;
  } else {
    out.fallback = true;
  }
  return out;
}

double predict_survival(const PredictionRequest& request, const FittedModel& fitted) {
  const double t = request.landmark, u = request.horizon;
  if (!(u >= t)) throw std::invalid_argument("predict_survival: need u >= t");
  const ParameterSet& params = fitted.theta_hat;
  const ModelSpec& spec = fitted.spec;
  if (u > spec.baseline_knots.back())
    throw std::domain_error("predict_survival: horizon beyond the fitted hazard grid");
  if (u == t) return 1.0;

  const SubjectData& h = request.history;
  Eigen::VectorXd b_hat = empirical_bayes_mode(h, t, fitted).mode;

  const int n = h.n_obs();
  if (n == 0 || !spec.uses_copula())
    return std::exp(-cumulative_hazard(h, t, u, b_hat, params, spec));

  const int j = n - 1;
  const double s = h.times[j];
  if (!(s <= t)) throw std::invalid_argument("predict_survival: last measurement after t");
  // Correlation evaluated at the last measurement time, clamped to the fitted
  // spline's support (no extrapolation of the basis).
  double rho = eval_rho(fitted.correlation_curve(),
                        spec.correlation_basis.clamp_to_domain(s));
  if (std::fabs(rho) < kRhoTiny)
    return std::exp(-cumulative_hazard(h, t, u, b_hat, params, spec));

  double z_y = (h.y[j] - linear_predictor_long(h, j, b_hat, params)) / params.sigma;
  auto clamp01 = [](double v) { return std::clamp(v, kUniformClampLo, kUniformClampHi); };
  double u_t = clamp01(-std::expm1(-cumulative_hazard(h, s, t, b_hat, params, spec)));
  double u_u = clamp01(-std::expm1(-cumulative_hazard(h, s, u, b_hat, params, spec)));

  double log_num, log_den;
  if (spec.copula == CopulaFamily::gaussian) {
    double sr = std::sqrt((1.0 - rho) * (1.0 + rho));
    log_num = normal_logcdf(-(normal_quantile(u_u) - rho * z_y) / sr);
    log_den = normal_logcdf(-(normal_quantile(u_t) - rho * z_y) / sr);
  } else {
    double w_y = t_quantile(clamp01(normal_cdf(z_y)), params.nu);
    double scale = std::sqrt((params.nu + w_y * w_y) * (1.0 - rho) * (1.0 + rho) /
                             (params.nu + 1.0));
    log_num = t_logcdf(-(t_quantile(u_u, params.nu) - rho * w_y) / scale, params.nu + 1.0);
    log_den = t_logcdf(-(t_quantile(u_t, params.nu) - rho * w_y) / scale, params.nu + 1.0);
  }
  if (log_den < std::log(1e-300)) {
    std::ostringstream msg;
    msg << "predict_survival: conditioning survival underflow (log num " << log_num
        << ", log den " << log_den << ")";
    throw std::runtime_error(msg.str());
  }
  return std::min(1.0, std::exp(log_num - log_den));
}

} // namespace copjm
