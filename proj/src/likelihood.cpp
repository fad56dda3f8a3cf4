#include "copjm/likelihood.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "copjm/distributions.hpp"
#include "copjm/quadrature.hpp"

namespace copjm {

namespace {

double clamp_u(double u, std::atomic<std::int64_t>* counter) {
  if (u < kUniformClampLo) {
    if (counter) counter->fetch_add(1, std::memory_order_relaxed);
    return kUniformClampLo;
  }
  if (u > kUniformClampHi) {
    if (counter) counter->fetch_add(1, std::memory_order_relaxed);
    return kUniformClampHi;
  }
  return u;
}

double require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw std::runtime_error(std::string("likelihood evaluation error: non-finite ") + what);
  return v;
}

// sigma(s|b,y)^2 = [nu + W_y^2][1 - rho^2] / (nu + 1)
double t_conditional_scale(double w_y, double rho, double nu) {
  return std::sqrt((nu + w_y * w_y) * (1.0 - rho) * (1.0 + rho) / (nu + 1.0));
}

double rho_at(const ModelSpec& spec, const ParameterSet& params, double s) {
  CorrelationCurve curve{spec.correlation_basis, params.eta, std::nullopt};
  return eval_rho(curve, s);
}

double log_sum_exp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

} // namespace

double conditional_event_cdf(const SubjectData& subject, double t, double s,
                             const Eigen::VectorXd& b, const ParameterSet& params,
                             const ModelSpec& spec) {
  if (!(t >= s))
    throw std::invalid_argument("conditional_event_cdf: need t >= s");
  return -std::expm1(-cumulative_hazard(subject, s, t, b, params, spec));
}

ConditionalUniforms conditional_uniforms(const SubjectData& subject, int j, double t,
                                         const Eigen::VectorXd& b,
                                         const ParameterSet& params,
                                         const ModelSpec& spec) {
  if (j < 0 || j >= subject.n_obs())
    throw std::invalid_argument("conditional_uniforms: observation index out of range");
  ConditionalUniforms cu;
  double s = subject.times[j];
  cu.u_t = clamp_u(conditional_event_cdf(subject, t, s, b, params, spec), nullptr);
  cu.z_y = require_finite(
      (subject.y[j] - linear_predictor_long(subject, j, b, params)) / params.sigma, "Z_y");
  cu.u_y = clamp_u(normal_cdf(cu.z_y), nullptr);
  cu.z_t = normal_quantile(cu.u_t);
  if (spec.copula == CopulaFamily::student_t) {
    cu.w_t = t_quantile(cu.u_t, params.nu);
    cu.w_y = t_quantile(cu.u_y, params.nu);
  }
  return cu;
}

double censored_pair_gaussian(const SubjectData& subject, int j, double t,
                              const Eigen::VectorXd& b, const ParameterSet& params,
                              const ModelSpec& spec) {
  double s = subject.times[j];
  if (!(t >= s)) throw std::invalid_argument("censored_pair_gaussian: need t >= s_ij");
  double rho = rho_at(spec, params, s);
  auto cu = conditional_uniforms(subject, j, t, b, params, spec);
  double log_marginal = normal_logpdf(cu.z_y) - std::log(params.sigma);
  double log_surv;
  if (std::fabs(rho) < kRhoTiny) {
    log_surv = -cumulative_hazard(subject, s, t, b, params, spec);
  } else {
    double sr = std::sqrt((1.0 - rho) * (1.0 + rho));
    log_surv = normal_logcdf(-(cu.z_t - rho * cu.z_y) / sr);
  }
  return std::exp(log_surv + log_marginal);
}

double event_pair_gaussian(const SubjectData& subject, double t,
                           const Eigen::VectorXd& b, const ParameterSet& params,
                           const ModelSpec& spec) {
  int j = subject.n_obs() - 1;
  double s = subject.times[j];
  if (!(t > s)) throw std::invalid_argument("event_pair_gaussian: need t > s_{i n_i}");
  double rho = rho_at(spec, params, s);
  auto cu = conditional_uniforms(subject, j, t, b, params, spec);
  double H = cumulative_hazard(subject, s, t, b, params, spec);
  double log_ft = std::log(hazard(subject, t, b, params, spec)) - H;
  double log_marginal = normal_logpdf(cu.z_y) - std::log(params.sigma);
  if (std::fabs(rho) < kRhoTiny) return std::exp(log_ft + log_marginal);
  double sr = std::sqrt((1.0 - rho) * (1.0 + rho));
  double log_cond =
      -std::log(sr) + normal_logpdf((cu.z_t - rho * cu.z_y) / sr) - normal_logpdf(cu.z_t);
  return std::exp(log_cond + log_ft + log_marginal);
}

double censored_pair_t(const SubjectData& subject, int j, double t,
                       const Eigen::VectorXd& b, const ParameterSet& params,
                       const ModelSpec& spec) {
  double s = subject.times[j];
  if (!(t >= s)) throw std::invalid_argument("censored_pair_t: need t >= s_ij");
  double rho = rho_at(spec, params, s);
  auto cu = conditional_uniforms(subject, j, t, b, params, spec);
  double scale = t_conditional_scale(cu.w_y, rho, params.nu);
  double log_surv = t_logcdf(-(cu.w_t - rho * cu.w_y) / scale, params.nu + 1.0);
  double log_marginal = normal_logpdf(cu.z_y) - std::log(params.sigma);
  return std::exp(log_surv + log_marginal);
}

double event_pair_t(const SubjectData& subject, double t, const Eigen::VectorXd& b,
                    const ParameterSet& params, const ModelSpec& spec) {
  int j = subject.n_obs() - 1;
  double s = subject.times[j];
  if (!(t > s)) throw std::invalid_argument("event_pair_t: need t > s_{i n_i}");
  double rho = rho_at(spec, params, s);
  auto cu = conditional_uniforms(subject, j, t, b, params, spec);
  double H = cumulative_hazard(subject, s, t, b, params, spec);
  double log_ft = std::log(hazard(subject, t, b, params, spec)) - H;
  // psi_2(W_t, W_y; R, nu) = psi(W_y; nu) * scale^-1 psi((W_t - rho W_y)/scale; nu+1),
  // so the psi(W_y) marginal correction of Eq-(8) form cancels analytically.
  double scale = t_conditional_scale(cu.w_y, rho, params.nu);
  double log_cond = -std::log(scale) +
                    t_logpdf((cu.w_t - rho * cu.w_y) / scale, params.nu + 1.0) -
                    t_logpdf(cu.w_t, params.nu);
  double log_marginal = normal_logpdf(cu.z_y) - std::log(params.sigma);
  return std::exp(log_cond + log_ft + log_marginal);
}

PosteriorRE posterior_re(const SubjectData& subject, const ParameterSet& params) {
  PosteriorRE post;
  const int n = subject.n_obs();
  const int r = static_cast<int>(params.D.rows());
  if (n == 0) {
    post.mean = Eigen::VectorXd::Zero(r);
    post.covariance = params.D;
    return post;
  }
  Eigen::MatrixXd ZD = subject.Z * params.D; // n x r
  Eigen::MatrixXd V = ZD * subject.Z.transpose();
  V.diagonal().array() += params.sigma * params.sigma;
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("posterior_re: V_y is numerically singular");
  Eigen::VectorXd res = subject.y - subject.X * params.beta1;
  post.mean = ZD.transpose() * llt.solve(res);
  post.covariance = params.D - ZD.transpose() * llt.solve(ZD);
  return post;
}

double marginal_y_logdensity(const SubjectData& subject, const ParameterSet& params) {
  const int n = subject.n_obs();
  if (n == 0) return 0.0;
  Eigen::MatrixXd V = subject.Z * params.D * subject.Z.transpose();
  V.diagonal().array() += params.sigma * params.sigma;
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("marginal_y_logdensity: V_y Cholesky failed");
  Eigen::VectorXd res = subject.y - subject.X * params.beta1;
  double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  double quad = res.dot(llt.solve(res));
  return -0.5 * (n * kLogTwoPi + logdet + quad);
}

// Shared by the public density and the quadrature hot path below.
namespace detail {

double log_conditional_event_density(const SubjectData& subject, double t, bool event,
                                     const Eigen::VectorXd& b,
                                     const ParameterSet& params, const ModelSpec& spec,
                                     std::atomic<std::int64_t>* clamp_counter) {
  const int n = subject.n_obs();
  if (n < 1) throw std::invalid_argument("conditional_event_density: empty subject");
  if (!(t > subject.times[n - 1]) && event)
    throw std::invalid_argument("conditional_event_density: event time within history");
  const bool gaussian = spec.copula == CopulaFamily::gaussian;
  const double nu = params.nu;
  double logf = -cumulative_hazard(subject, 0.0, subject.times[0], b, params, spec);
  for (int j = 0; j + 1 < n; ++j) {
    double s = subject.times[j], s_next = subject.times[j + 1];
    double H = cumulative_hazard(subject, s, s_next, b, params, spec);
    double rho = spec.uses_copula() ? rho_at(spec, params, s) : 0.0;
    if (!spec.uses_copula() || (gaussian && std::fabs(rho) < kRhoTiny) || H == 0.0) {
      logf += -H;
      continue;
    }
    double u_t = clamp_u(-std::expm1(-H), clamp_counter);
    double z_y = require_finite(
        (subject.y[j] - linear_predictor_long(subject, j, b, params)) / params.sigma, "Z_y");
    if (gaussian) {
      double z_t = normal_quantile(u_t);
      double sr = std::sqrt((1.0 - rho) * (1.0 + rho));
      logf += normal_logcdf(-(z_t - rho * z_y) / sr);
    } else {
      double w_t = t_quantile(u_t, nu);
      double w_y = t_quantile(clamp_u(normal_cdf(z_y), clamp_counter), nu);
      double scale = t_conditional_scale(w_y, rho, nu);
      logf += t_logcdf(-(w_t - rho * w_y) / scale, nu + 1.0);
    }
  }
  // Terminal factor over [s_{n-1}, t].
  int j = n - 1;
  double s = subject.times[j];
  double H = cumulative_hazard(subject, s, t, b, params, spec);
  double rho = spec.uses_copula() ? rho_at(spec, params, s) : 0.0;
  if (!spec.uses_copula() || (gaussian && std::fabs(rho) < kRhoTiny) ||
      (H == 0.0 && !event)) {
    logf += -H;
    if (event) logf += std::log(hazard(subject, t, b, params, spec));
    return logf;
  }
  double u_t = clamp_u(-std::expm1(-H), clamp_counter);
  double z_y = require_finite(
      (subject.y[j] - linear_predictor_long(subject, j, b, params)) / params.sigma, "Z_y");
  if (gaussian) {
    double z_t = normal_quantile(u_t);
    double sr = std::sqrt((1.0 - rho) * (1.0 + rho));
    if (event) {
      double log_ft = std::log(hazard(subject, t, b, params, spec)) - H;
      logf += -std::log(sr) + normal_logpdf((z_t - rho * z_y) / sr) + log_ft -
              normal_logpdf(z_t);
    } else {
      logf += normal_logcdf(-(z_t - rho * z_y) / sr);
    }
  } else {
    double w_t = t_quantile(u_t, nu);
    double w_y = t_quantile(clamp_u(normal_cdf(z_y), clamp_counter), nu);
    double scale = t_conditional_scale(w_y, rho, nu);
    if (event) {
      double log_ft = std::log(hazard(subject, t, b, params, spec)) - H;
      logf += -std::log(scale) + t_logpdf((w_t - rho * w_y) / scale, nu + 1.0) + log_ft -
              t_logpdf(w_t, nu);
    } else {
      logf += t_logcdf(-(w_t - rho * w_y) / scale, nu + 1.0);
    }
  }
  return logf;
}

} // namespace detail

double conditional_event_density_given_y(const SubjectData& subject, double t,
                                         bool event, const Eigen::VectorXd& b,
                                         const ParameterSet& params,
                                         const ModelSpec& spec) {
  return std::exp(
      detail::log_conditional_event_density(subject, t, event, b, params, spec, nullptr));
}

LikelihoodContext::LikelihoodContext(const Dataset& dataset, const ModelSpec& spec,
                                     LoglikOptions opts)
    : dataset_(&dataset), spec_(spec), opts_(opts) {
  if (opts_.quad_nodes < 1)
    throw std::invalid_argument("LikelihoodContext: quad_nodes must be >= 1");
  auto rule = gauss_hermite(opts_.quad_nodes);
  gh_nodes_ = rule.nodes;
  gh_log_weights_ = rule.weights.array().log();
  const auto& knots = spec_.baseline_knots;
  const int K = spec_.baseline_pieces();
  workspaces_.reserve(dataset.subjects.size());
  for (const auto& subject : dataset.subjects) {
    SubjectWorkspace ws;
    const int n = subject.n_obs();
    auto decompose = [&](double lo, double hi) {
      std::vector<Segment> segs;
      for (int k = 0; k < K; ++k) {
        double u1 = std::max(lo, knots[k]);
        double u2 = std::min(hi, knots[k + 1]);
        if (u2 > u1) segs.push_back({k, u1, u2});
      }
      return segs;
    };
    ws.interval_segments.push_back(decompose(0.0, subject.times[0]));
    for (int j = 0; j + 1 < n; ++j)
      ws.interval_segments.push_back(decompose(subject.times[j], subject.times[j + 1]));
    if (subject.event_time > knots.back())
      throw std::domain_error("LikelihoodContext: event time '" + subject.id +
                              "' beyond the baseline-hazard grid");
    ws.interval_segments.push_back(decompose(subject.times[n - 1], subject.event_time));
    ws.terminal_piece = K - 1;
    while (ws.terminal_piece > 0 && subject.event_time < knots[ws.terminal_piece])
      --ws.terminal_piece;
    if (spec_.uses_copula()) {
      ws.corr_rows.resize(n, spec_.correlation_basis.size());
      for (int j = 0; j < n; ++j)
        ws.corr_rows.row(j) = spec_.correlation_basis.eval(
            spec_.correlation_basis.clamp_to_domain(subject.times[j]));
    }
    workspaces_.push_back(std::move(ws));
  }
}

double LikelihoodContext::subject_loglik_ws(const SubjectData& subject,
                                            const SubjectWorkspace& ws,
                                            const ParameterSet& params) const {
  const int n = subject.n_obs();
  const int r = spec_.re_dim();
  const bool gaussian = spec_.copula == CopulaFamily::gaussian;
  const double nu = params.nu;
  const double sigma = params.sigma;

  Eigen::VectorXd res = subject.y - subject.X * params.beta1;

  // Marginal density of y and the posterior moments of b | y share V_y.
  Eigen::MatrixXd ZD = subject.Z * params.D;
  Eigen::MatrixXd V = ZD * subject.Z.transpose();
  V.diagonal().array() += sigma * sigma;
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("subject_loglik: V_y Cholesky failed for '" + subject.id + "'");
  double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  Eigen::VectorXd Vinv_res = llt.solve(res);
  double log_marg_y = -0.5 * (n * kLogTwoPi + logdet + res.dot(Vinv_res));

  Eigen::VectorXd post_mean = ZD.transpose() * Vinv_res;
  Eigen::MatrixXd post_cov = params.D - ZD.transpose() * llt.solve(ZD);

  Eigen::MatrixXd center_cov = opts_.adaptive ? post_cov : params.D;
  Eigen::VectorXd center_mean =
      opts_.adaptive ? post_mean : Eigen::VectorXd::Zero(r);
  Eigen::LLT<Eigen::MatrixXd> cov_llt(center_cov);
  if (cov_llt.info() != Eigen::Success)
    throw std::runtime_error("subject_loglik: posterior covariance not PD for '" +
                             subject.id + "'");
  Eigen::MatrixXd L = cov_llt.matrixL();

  // Density ratio correction when the kernel is not the posterior itself.
  Eigen::LLT<Eigen::MatrixXd> post_llt, prior_llt;
  double post_logdet = 0.0, prior_logdet = 0.0;
  if (!opts_.adaptive) {
    post_llt.compute(post_cov);
    post_logdet =
        2.0 * post_llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    prior_llt.compute(params.D);
    prior_logdet =
        2.0 * prior_llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }

  // Correlations at the measurement times are node-independent.
  Eigen::VectorXd rho(n);
  if (spec_.uses_copula()) {
    for (int j = 0; j < n; ++j)
      rho[j] = rho_from_r(ws.corr_rows.row(j).dot(params.eta));
  } else {
    rho.setZero();
  }

  const double w_beta2 = subject.w.dot(params.beta2);
  const double a0 = params.alpha_for(0);
  const double a1 = r == 2 ? params.alpha_for(1) : 0.0;
  const auto& lambda = params.lambda;
  const double T = subject.event_time;

  auto seg_sum = [&lambda](const std::vector<Segment>& segs, double gamma) {
    double total = 0.0;
    if (gamma == 0.0) {
      for (const auto& s : segs) total += lambda[s.piece] * (s.u2 - s.u1);
    } else {
      for (const auto& s : segs)
        total += lambda[s.piece] * std::exp(gamma * s.u1) *
                 std::expm1(gamma * (s.u2 - s.u1)) / gamma;
    }
    return total;
  };

  Eigen::VectorXd zb(n); // Z b at the current node, filled by the caller
  auto log_ft_given_b = [&](const Eigen::VectorXd& b) -> double {
    const double c0 = w_beta2 + a0 * b[0];
    const double gamma = r == 2 ? a1 * b[1] : 0.0;
    const double scale = std::exp(c0);
    double logf = -scale * seg_sum(ws.interval_segments[0], gamma);
    for (int j = 0; j + 1 < n; ++j) {
      double H = scale * seg_sum(ws.interval_segments[j + 1], gamma);
      if (!spec_.uses_copula() || (gaussian && std::fabs(rho[j]) < kRhoTiny) ||
          H == 0.0) {
        logf -= H;
        continue;
      }
      double u_t = clamp_u(-std::expm1(-H), &clamp_count_);
      double z_y = (res[j] - zb[j]) / sigma;
      if (gaussian) {
        double z_t = normal_quantile(u_t);
        double sr = std::sqrt((1.0 - rho[j]) * (1.0 + rho[j]));
        logf += normal_logcdf(-(z_t - rho[j] * z_y) / sr);
      } else {
        double w_t = t_quantile(u_t, nu);
        double w_y = t_quantile(clamp_u(normal_cdf(z_y), &clamp_count_), nu);
        double sc = t_conditional_scale(w_y, rho[j], nu);
        logf += t_logcdf(-(w_t - rho[j] * w_y) / sc, nu + 1.0);
      }
    }
    int j = n - 1;
    double H = scale * seg_sum(ws.interval_segments[n], gamma);
    double log_h = std::log(lambda[ws.terminal_piece]) + c0 + gamma * T;
    if (!spec_.uses_copula() || (gaussian && std::fabs(rho[j]) < kRhoTiny)) {
      logf -= H;
      if (subject.event) logf += log_h;
      return logf;
    }
    double u_t = clamp_u(-std::expm1(-H), &clamp_count_);
    double z_y = (res[j] - zb[j]) / sigma;
    if (gaussian) {
      double z_t = normal_quantile(u_t);
      double sr = std::sqrt((1.0 - rho[j]) * (1.0 + rho[j]));
      if (subject.event) {
        logf += -std::log(sr) + normal_logpdf((z_t - rho[j] * z_y) / sr) +
                (log_h - H) - normal_logpdf(z_t);
      } else {
        logf += normal_logcdf(-(z_t - rho[j] * z_y) / sr);
      }
    } else {
      double w_t = t_quantile(u_t, nu);
      double w_y = t_quantile(clamp_u(normal_cdf(z_y), &clamp_count_), nu);
      double sc = t_conditional_scale(w_y, rho[j], nu);
      if (subject.event) {
        logf += -std::log(sc) + t_logpdf((w_t - rho[j] * w_y) / sc, nu + 1.0) +
                (log_h - H) - t_logpdf(w_t, nu);
      } else {
        logf += t_logcdf(-(w_t - rho[j] * w_y) / sc, nu + 1.0);
      }
    }
    return logf;
  };

  // Density-ratio correction for the non-adaptive kernel.
  auto log_kernel_ratio = [&](const Eigen::VectorXd& b) -> double {
    if (opts_.adaptive) return 0.0;
    Eigen::VectorXd dm = b - post_mean;
    double log_post = -0.5 * (r * kLogTwoPi + post_logdet + dm.dot(post_llt.solve(dm)));
    double log_prior = -0.5 * (r * kLogTwoPi + prior_logdet + b.dot(prior_llt.solve(b)));
    return log_post - log_prior;
  };

  const int m = static_cast<int>(gh_nodes_.size());
  const double sqrt2 = std::sqrt(2.0);
  // Z b decomposes over the node as Z mean + sqrt(2) (Z L) xi, so the inner
  // loop stays allocation-free.
  Eigen::VectorXd z_center = subject.Z * center_mean;
  Eigen::MatrixXd ZL = subject.Z * L;
  std::vector<double> terms;
  terms.reserve(r == 1 ? m : m * m);
  Eigen::VectorXd b(r);
  if (r == 1) {
    for (int i = 0; i < m; ++i) {
      b[0] = center_mean[0] + sqrt2 * L(0, 0) * gh_nodes_[i];
      zb = z_center + sqrt2 * gh_nodes_[i] * ZL.col(0);
      terms.push_back(gh_log_weights_[i] + log_ft_given_b(b) + log_kernel_ratio(b));
    }
  } else {
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) {
        b[0] = center_mean[0] + sqrt2 * L(0, 0) * gh_nodes_[i];
        b[1] = center_mean[1] +
               sqrt2 * (L(1, 0) * gh_nodes_[i] + L(1, 1) * gh_nodes_[k]);
        zb.noalias() = z_center;
        zb.noalias() += (sqrt2 * gh_nodes_[i]) * ZL.col(0);
        zb.noalias() += (sqrt2 * gh_nodes_[k]) * ZL.col(1);
        terms.push_back(gh_log_weights_[i] + gh_log_weights_[k] + log_ft_given_b(b) +
                        log_kernel_ratio(b));
      }
    }
  }
  double log_integral = log_sum_exp(terms) - 0.5 * r * std::log(M_PI);
  double ll = log_marg_y + log_integral;
  if (std::isnan(ll))
    throw std::runtime_error("subject_loglik: NaN for subject '" + subject.id + "'");
  return ll;
}

double LikelihoodContext::subject_loglik(int subject_index, const ParameterSet& params) const {
  return subject_loglik_ws(dataset_->subjects[subject_index], workspaces_[subject_index],
                           params);
}

double LikelihoodContext::total_loglik(const ParameterSet& params) const {
  const int n = static_cast<int>(dataset_->subjects.size());
  if (n == 0) return 0.0;
  const int workers = std::max(1, opts_.workers);
  if (workers == 1) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += subject_loglik(i, params);
    return total;
  }
  // Fixed contiguous blocks summed in index order keep results bit-stable
  // for a given worker count.
  std::vector<double> block_sums(workers, 0.0);
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      int lo = static_cast<int>(static_cast<long>(n) * w / workers);
      int hi = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
      double s = 0.0;
      try {
        for (int i = lo; i < hi; ++i) s += subject_loglik(i, params);
      } catch (...) {
        failed.store(true);
      }
      block_sums[w] = s;
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load())
    throw std::runtime_error("total_loglik: a subject evaluation failed");
  double total = 0.0;
  for (double s : block_sums) total += s;
  return total;
}

double subject_loglik(const SubjectData& subject, const ParameterSet& params,
                      const ModelSpec& spec, const LoglikOptions& opts) {
  Dataset single;
  single.subjects.push_back(subject);
  LikelihoodContext ctx(single, spec, opts);
  return ctx.subject_loglik(0, params);
}

double total_loglik(const Dataset& dataset, const ParameterSet& params,
                    const ModelSpec& spec, const LoglikOptions& opts) {
  LikelihoodContext ctx(dataset, spec, opts);
  return ctx.total_loglik(params);
}

} // namespace copjm
