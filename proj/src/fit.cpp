#include "copjm/fit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "copjm/derivatives.hpp"
#include "copjm/distributions.hpp"
#include "copjm/optimize.hpp"
#include "copjm/pack.hpp"

namespace copjm {

namespace {

// Pooled OLS start for the fixed effects, with a rank check that names the
// offending columns.
Eigen::VectorXd pooled_ols(const Dataset& dataset, const ModelSpec& spec,
                           double* residual_var) {
  int total = 0;
  for (const auto& s : dataset.subjects) total += s.n_obs();
  const int p = spec.fixed_dim();
  Eigen::MatrixXd X(total, p);
  Eigen::VectorXd y(total);
  int at = 0;
  for (const auto& s : dataset.subjects) {
    X.middleRows(at, s.n_obs()) = s.X;
    y.segment(at, s.n_obs()) = s.y;
    at += s.n_obs();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::ostringstream msg;
    msg << "initialize: longitudinal design is rank-deficient; dependent columns:";
    auto perm = qr.colsPermutation().indices();
    for (int k = qr.rank(); k < p; ++k) msg << ' ' << perm[k];
    throw std::runtime_error(msg.str());
  }
  Eigen::VectorXd beta = qr.solve(y);
  double rss = (y - X * beta).squaredNorm();
  *residual_var = rss / std::max(1, total - p);
  return beta;
}

// Piecewise-exponential proportional-hazards log-likelihood (no frailty):
// sum_i delta_i (log lambda_{k(T_i)} + w'beta2) - e^{w'beta2} sum_k lambda_k E_ik.
struct SurvivalStart {
  Eigen::VectorXd beta2;
  Eigen::VectorXd lambda;
};

SurvivalStart survival_start(const Dataset& dataset, const ModelSpec& spec) {
  const int q = spec.surv_covariates;
  const int K = spec.baseline_pieces();
  const auto& v = spec.baseline_knots;
  const int n = dataset.n_subjects();
  Eigen::MatrixXd exposure(n, K);
  Eigen::VectorXi event_piece(n);
  for (int i = 0; i < n; ++i) {
    double T = dataset.subjects[i].event_time;
    for (int k = 0; k < K; ++k)
      exposure(i, k) = std::max(0.0, std::min(T, v[k + 1]) - v[k]);
    int k = K - 1;
    while (k > 0 && T < v[k]) --k;
    event_piece[i] = k;
  }
  // Occurrence/exposure start for lambda.
  Eigen::VectorXd events = Eigen::VectorXd::Zero(K);
  Eigen::VectorXd expo = Eigen::VectorXd::Zero(K);
  for (int i = 0; i < n; ++i) {
    if (dataset.subjects[i].event) events[event_piece[i]] += 1.0;
    expo += exposure.row(i).transpose();
  }
  Eigen::VectorXd x0(q + K);
  x0.head(q).setZero();
  for (int k = 0; k < K; ++k) {
    double rate = (events[k] + 0.5) / std::max(expo[k], 1e-8);
    x0[q + k] = std::log(rate);
  }
  auto negll = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd beta2 = x.head(q);
    Eigen::VectorXd lambda = x.tail(K).array().exp();
    double ll = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& s = dataset.subjects[i];
      double lin = s.w.dot(beta2);
      if (s.event) ll += std::log(lambda[event_piece[i]]) + lin;
      ll -= std::exp(lin) * exposure.row(i).dot(lambda);
    }
    return -ll;
  };
  OptimOptions oo;
  oo.max_iter = 500;
  auto res = minimize_bfgs(negll, x0, oo);
  SurvivalStart out;
  out.beta2 = res.x.head(q);
  out.lambda = res.x.tail(K).array().exp();
  return out;
}

Objective make_objective(const LikelihoodContext& ctx, const ModelSpec& spec) {
  return [&ctx, spec](const Eigen::VectorXd& x) {
    return -ctx.total_loglik(unpack(x, spec));
  };
}

} // namespace

ParameterSet initialize(const Dataset& dataset, const ModelSpec& spec,
                        const InitOptions& opts) {
  if (dataset.subjects.empty())
    throw std::invalid_argument("initialize: empty dataset");
  const int r = spec.re_dim();

  ParameterSet params;
  double resid_var = 1.0;
  params.beta1 = pooled_ols(dataset, spec, &resid_var);
  params.sigma = std::sqrt(std::max(resid_var / 2.0, 1e-8));
  params.D = Eigen::MatrixXd::Zero(r, r);
  params.D(0, 0) = std::max(resid_var / 2.0, 1e-6);
  if (r == 2) params.D(1, 1) = std::max(resid_var / 20.0, 1e-6);

  // Stage 1: ML linear mixed model over (D, sigma) with beta1 profiled out by
  // generalized least squares at each variance-component trial.
  {
    params.beta2 = Eigen::VectorXd::Zero(spec.surv_covariates);
    params.alpha = Eigen::VectorXd::Zero(spec.alpha_dim());
    params.lambda = Eigen::VectorXd::Ones(spec.baseline_pieces());
    params.eta = Eigen::VectorXd::Zero(spec.correlation_dim());
    params.nu = spec.nu;
    const int p = spec.fixed_dim();
    const int re_block = r * (r + 1) / 2;

    // Floor sigma so degenerate (noise-free) responses cannot collapse V.
    double y_scale = 0.0;
    int y_count = 0;
    for (const auto& s : dataset.subjects) {
      y_scale += s.y.squaredNorm();
      y_count += s.n_obs();
    }
    const double sigma_floor = 1e-4 * std::sqrt(y_scale / std::max(1, y_count)) + 1e-10;
    auto unpack_vc = [&](const Eigen::VectorXd& x, ParameterSet& trial) {
      Eigen::MatrixXd L = Eigen::MatrixXd::Zero(r, r);
      int at = 0;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j)
          L(i, j) = i == j ? std::exp(x[at++]) : x[at++];
      trial.D = L * L.transpose();
      trial.sigma = std::max(std::exp(x[re_block]), sigma_floor);
    };
    auto gls_beta = [&](const ParameterSet& trial) {
      Eigen::MatrixXd xtv_x = Eigen::MatrixXd::Zero(p, p);
      Eigen::VectorXd xtv_y = Eigen::VectorXd::Zero(p);
      for (const auto& s : dataset.subjects) {
        Eigen::MatrixXd V = s.Z * trial.D * s.Z.transpose();
        V.diagonal().array() += trial.sigma * trial.sigma;
        Eigen::LLT<Eigen::MatrixXd> llt(V);
        xtv_x.noalias() += s.X.transpose() * llt.solve(s.X);
        xtv_y.noalias() += s.X.transpose() * llt.solve(s.y);
      }
      return Eigen::VectorXd(xtv_x.ldlt().solve(xtv_y));
    };

    Eigen::VectorXd x0(re_block + 1);
    x0.setZero();
    for (int i = 0, at = 0; i < r; ++i)
      for (int j = 0; j <= i; ++j, ++at)
        if (i == j) x0[at] = 0.5 * std::log(std::max(params.D(i, i), 1e-6));
    x0[re_block] = std::log(params.sigma);
    auto negll = [&](const Eigen::VectorXd& x) {
      ParameterSet trial = params;
      unpack_vc(x, trial);
      trial.beta1 = gls_beta(trial);
      double ll = 0.0;
      for (const auto& s : dataset.subjects) ll += marginal_y_logdensity(s, trial);
      return -ll;
    };
    OptimOptions oo;
    oo.max_iter = 300;
    auto res = minimize_bfgs(negll, x0, oo);
    unpack_vc(res.x, params);
    params.beta1 = gls_beta(params);
  }

  // Stage 2: survival sub-model without frailty.
  auto surv = survival_start(dataset, spec);
  params.beta2 = surv.beta2;
  params.lambda = surv.lambda;

  // Short regular-joint-model maximization with alpha free from 0.
  if (opts.warmstart_iter > 0) {
    ModelSpec rjm = spec;
    rjm.copula = CopulaFamily::independence;
    ParameterSet rjm_params = params;
    rjm_params.eta.resize(0);
    LoglikOptions lo;
    lo.quad_nodes = opts.quad_nodes;
    lo.workers = opts.workers;
    LikelihoodContext ctx(dataset, rjm, lo);
    OptimOptions oo;
    oo.max_iter = opts.warmstart_iter;
    auto res = minimize_bfgs(make_objective(ctx, rjm), pack(rjm_params, rjm), oo);
    rjm_params = unpack(res.x, rjm);
    params.beta1 = rjm_params.beta1;
    params.beta2 = rjm_params.beta2;
    params.alpha = rjm_params.alpha;
    params.D = rjm_params.D;
    params.sigma = rjm_params.sigma;
    params.lambda = rjm_params.lambda;
  }
  params.eta = Eigen::VectorXd::Zero(spec.correlation_dim());
  params.nu = spec.nu;
  return params;
}

FittedModel fit(const Dataset& dataset, const ModelSpec& spec, const FitOptions& opts) {
  spec.validate();
  dataset.validate();
  ParameterSet start;
  if (opts.init.has_value()) {
    start = *opts.init;
    start.nu = spec.nu;
    start.validate(spec);
  } else {
    InitOptions io;
    io.quad_nodes = opts.quad_nodes;
    io.warmstart_iter = opts.warmstart_iter;
    io.workers = opts.workers;
    start = initialize(dataset, spec, io);
  }

  LoglikOptions lo;
  lo.quad_nodes = opts.quad_nodes;
  lo.workers = opts.workers;
  LikelihoodContext ctx(dataset, spec, lo);
  Objective objective = make_objective(ctx, spec);

  Eigen::VectorXd theta = pack(start, spec);
  OptimResult best;
  best.x = theta;
  best.f = objective(theta);

  Convergence conv;
  if (opts.optimizer != OptimizerChoice::nelder_mead) {
    OptimOptions oo;
    oo.f_tol = opts.f_tol;
    oo.x_tol = opts.x_tol;
    oo.max_iter = opts.max_iter;
    auto res = minimize_bfgs(objective, best.x, oo);
    if (res.f <= best.f) best = res;
    conv.iterations += res.iterations;
    conv.gradient_norm = res.gradient_norm;
    conv.converged = res.converged;
  }
  if (opts.optimizer != OptimizerChoice::quasi_newton) {
    OptimOptions oo;
    oo.f_tol = opts.f_tol;
    oo.x_tol = opts.x_tol;
    oo.max_iter = opts.optimizer == OptimizerChoice::nelder_mead ? opts.max_iter
                                                                 : opts.nm_polish_iter;
    auto res = minimize_nelder_mead(objective, best.x, oo);
    if (res.f <= best.f) best = res;
    conv.iterations += res.iterations;
    conv.simplex_size = res.simplex_size;
    conv.converged = conv.converged || res.converged;
  }
  conv.status = conv.converged ? "ok" : "max-iterations";

  FittedModel fitted;
  fitted.spec = spec;
  fitted.theta_hat = unpack(best.x, spec);
  fitted.loglik = -best.f;
  const int dim = packed_dim(spec);
  const int n = dataset.n_subjects();
  fitted.aic = -2.0 * fitted.loglik + 2.0 * dim;
  fitted.bic = -2.0 * fitted.loglik + std::log(static_cast<double>(n)) * dim;
  fitted.names = parameter_names(spec);
  fitted.quad_nodes = opts.quad_nodes;
  fitted.n_subjects = n;

  if (opts.compute_vcov) {
    try {
      Eigen::MatrixXd hess = numeric_hessian(objective, best.x);
      Eigen::LLT<Eigen::MatrixXd> llt(hess);
      if (llt.info() == Eigen::Success) {
        fitted.vcov = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
        // Delta method to the natural scale: J = d natural / d packed.
        Eigen::MatrixXd jac(dim, dim);
        Eigen::VectorXd nat0 = natural_vector(fitted.theta_hat, spec);
        for (int k = 0; k < dim; ++k) {
          Eigen::VectorXd xp = best.x;
          double h = 1e-6 * (1.0 + std::fabs(xp[k]));
          xp[k] += h;
          jac.col(k) = (natural_vector(unpack(xp, spec), spec) - nat0) / h;
        }
        Eigen::MatrixXd nat_cov = jac * fitted.vcov * jac.transpose();
        fitted.se = nat_cov.diagonal().array().max(0.0).sqrt();
      } else {
        conv.status = conv.status + ";hessian-not-pd";
      }
    } catch (const std::exception& e) {
      conv.status = conv.status + ";hessian-failed";
    }
  }
  fitted.convergence = conv;
  fitted.clamp_count = ctx.clamp_count();
  return fitted;
}

Eigen::MatrixXd FittedModel::eta_covariance() const {
  const int l = spec.correlation_dim();
  if (!has_vcov() || l == 0) return Eigen::MatrixXd::Zero(l, l);
  return vcov.bottomRightCorner(l, l);
}

CorrelationCurve FittedModel::correlation_curve() const {
  CorrelationCurve curve;
  curve.basis = spec.correlation_basis;
  curve.eta = theta_hat.eta;
  if (has_vcov() && spec.correlation_dim() > 0) curve.eta_covariance = eta_covariance();
  return curve;
}

std::vector<BandPoint> correlation_band(const FittedModel& fitted,
                                        const std::vector<double>& t_grid) {
  if (!fitted.spec.uses_copula())
    throw std::invalid_argument("correlation_band: model has no correlation function");
  if (!fitted.has_vcov())
    throw std::runtime_error("correlation_band: variance-covariance matrix unavailable");
  Eigen::MatrixXd cov = fitted.eta_covariance();
  std::vector<BandPoint> band;
  band.reserve(t_grid.size());
  for (double t : t_grid) {
    Eigen::VectorXd basis = fitted.spec.correlation_basis.eval(t);
    double r = basis.dot(fitted.theta_hat.eta);
    double sd = std::sqrt(std::max(0.0, basis.dot(cov * basis)));
    band.push_back({t, rho_from_r(r), rho_from_r(r - 1.959963984540054 * sd),
                    rho_from_r(r + 1.959963984540054 * sd)});
  }
  return band;
}

ModelComparison compare(const FittedModel& nested, const FittedModel& wider) {
  ModelComparison cmp;
  cmp.delta_aic = nested.aic - wider.aic;
  cmp.delta_bic = nested.bic - wider.bic;
  int df = packed_dim(wider.spec) - packed_dim(nested.spec);
  if (nested.n_subjects != wider.n_subjects)
    throw std::invalid_argument("compare: fits are not on the same dataset");
  if (df < 0)
    throw std::invalid_argument("compare: first fit must be nested in the second");
  cmp.lrt_df = df;
  cmp.lrt_stat = 2.0 * (wider.loglik - nested.loglik);
  if (df == 0) {
    cmp.lrt_pvalue = 1.0;
  } else {
    double stat = std::max(0.0, cmp.lrt_stat);
    cmp.lrt_pvalue = 1.0 - chi_squared_cdf(stat, df);
  }
  return cmp;
}

ProfileResult profile_t_df(const Dataset& dataset, const ModelSpec& spec,
                           const std::vector<double>& df_grid, const FitOptions& opts) {
  ProfileResult profile;
  FitOptions point_opts = opts;
  for (double nu : df_grid) {
    ProfilePoint pt;
    pt.nu = nu;
    try {
      if (!(nu > 2.0)) throw std::invalid_argument("profile_t_df: df must exceed 2");
      ModelSpec spec_nu = spec;
      spec_nu.copula = CopulaFamily::student_t;
      spec_nu.nu = nu;
      auto fitted = fit(dataset, spec_nu, point_opts);
      pt.loglik = fitted.loglik;
      pt.ok = true;
      point_opts.init = fitted.theta_hat; // warm start for the next grid point
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
    profile.points.push_back(pt);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& pt : profile.points) {
    if (pt.ok && pt.loglik > best) {
      best = pt.loglik;
      profile.best_nu = pt.nu;
      profile.any_ok = true;
    }
  }
  return profile;
}

} // namespace copjm
