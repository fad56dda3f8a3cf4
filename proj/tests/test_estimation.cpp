#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "copjm/fit.hpp"
#include "copjm/optimize.hpp"
#include "copjm/pack.hpp"
#include "copjm/simulate.hpp"
#include "support/fixtures.hpp"

using namespace copjm;

namespace {

// Small, quick-to-fit design shared by the fitting tests.
Scenario small_scenario(int n, CopulaFamily copula = CopulaFamily::gaussian) {
  Scenario sc = Scenario::defaults();
  sc.n = n;
  sc.schedule.clear();
  for (int k = 0; k <= 8; ++k) sc.schedule.push_back(static_cast<double>(k));
  sc.correlation_basis = BSplineBasis(4, 0.0, 8.3);
  sc.copula = copula;
  return sc;
}

ModelSpec fitting_spec(const Scenario& sc, const Dataset& data, CopulaFamily copula,
                       int pieces = 4) {
  ModelSpec spec = sc.generating_spec();
  spec.baseline_knots = equally_spaced_knots(data.max_event_time(), pieces);
  spec.copula = copula;
  if (copula != CopulaFamily::independence) spec.correlation_basis = sc.correlation_basis;
  return spec;
}

FitOptions quick_options() {
  FitOptions fo;
  fo.quad_nodes = 5;
  fo.max_iter = 200;
  fo.nm_polish_iter = 80;
  fo.warmstart_iter = 120;
  fo.compute_vcov = false;
  return fo;
}

} // namespace

TEST_CASE("pack/unpack bijection") {
  auto spec = fixtures::make_spec(CopulaFamily::student_t, 2, 5.0, 4);
  oracles::TestRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    ParameterSet params;
    params.beta1 = Eigen::VectorXd::NullaryExpr(3, [&](int) { return rng.uniform(-3, 3); });
    params.beta2 = Eigen::VectorXd::NullaryExpr(1, [&](int) { return rng.uniform(-3, 3); });
    params.alpha = Eigen::VectorXd::NullaryExpr(1, [&](int) { return rng.uniform(-1, 1); });
    Eigen::MatrixXd A(2, 2);
    A << rng.uniform(0.5, 2.0), rng.uniform(-0.3, 0.3), 0.0, rng.uniform(0.2, 1.0);
    A(1, 0) = A(0, 1);
    params.D = A * A.transpose() + 0.3 * Eigen::MatrixXd::Identity(2, 2);
    params.sigma = rng.uniform(0.3, 3.0);
    params.lambda = Eigen::VectorXd::NullaryExpr(4, [&](int) { return rng.uniform(0.01, 2.0); });
    params.eta = Eigen::VectorXd::NullaryExpr(4, [&](int) { return rng.uniform(-2, 2); });
    params.nu = 5.0;

    Eigen::VectorXd theta = pack(params, spec);
    ParameterSet back = unpack(theta, spec);
    CHECK((back.beta1 - params.beta1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.beta2 - params.beta2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.alpha - params.alpha).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.D - params.D).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(back.sigma == doctest::Approx(params.sigma).epsilon(1e-12));
    CHECK((back.lambda - params.lambda).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.eta - params.eta).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pack special values and the natural-scale report") {
  auto spec = fixtures::make_spec(CopulaFamily::gaussian, 2, 4.0, 2);
  ParameterSet params;
  params.beta1 = Eigen::VectorXd::Zero(3);
  params.beta2 = Eigen::VectorXd::Zero(1);
  params.alpha = Eigen::VectorXd::Zero(1);
  params.D = Eigen::MatrixXd::Identity(2, 2);
  params.sigma = 1.0;
  params.lambda = Eigen::VectorXd::Ones(2);
  params.eta = Eigen::VectorXd::Zero(4);

  Eigen::VectorXd theta = pack(params, spec);
  CHECK(theta.cwiseAbs().maxCoeff() == 0.0); // identity D, unit sigma/lambda -> all zero

  auto names = parameter_names(spec);
  CHECK(static_cast<int>(names.size()) == packed_dim(spec));
  CHECK(std::count(names.begin(), names.end(), "alpha") == 1);
  CHECK(std::count(names.begin(), names.end(), "D12") == 1);
  CHECK(std::count(names.begin(), names.end(), "sigma") == 1);

  Eigen::VectorXd nat = natural_vector(params, spec);
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == "sigma") CHECK(nat[k] == 1.0);
    if (names[k] == "D11") CHECK(nat[k] == 1.0);
    if (names[k] == "D12") CHECK(nat[k] == 0.0);
  }

  CHECK_THROWS_AS(unpack(Eigen::VectorXd::Zero(3), spec), std::invalid_argument);

  // The bijection leaves the likelihood value unchanged.
  auto c = fixtures::make_case(CopulaFamily::gaussian, 0.5, 3, 301);
  LoglikOptions lo{7, true, 1};
  double before = subject_loglik(c.subject, c.params, c.spec, lo);
  double after = subject_loglik(c.subject, unpack(pack(c.params, c.spec), c.spec), c.spec, lo);
  CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("optimizers decrease the objective monotonically") {
  Eigen::MatrixXd A(3, 3);
  A << 5.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 2.0;
  Eigen::VectorXd target(3);
  target << 1.0, -2.0, 0.5;
  std::vector<double> accepted;
  Objective f = [&](const Eigen::VectorXd& x) {
    return 0.5 * (x - target).dot(A * (x - target));
  };
  OptimOptions oo;
  auto res = minimize_bfgs(f, Eigen::VectorXd::Zero(3), oo);
  CHECK(res.converged);
  CHECK((res.x - target).cwiseAbs().maxCoeff() < 1e-5);

  auto nm = minimize_nelder_mead(f, Eigen::VectorXd::Zero(3), oo);
  CHECK((nm.x - target).cwiseAbs().maxCoeff() < 1e-3);

  // Rosenbrock sanity for the simplex.
  Objective rosen = [](const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  OptimOptions ro;
  ro.max_iter = 5000;
  ro.f_tol = 1e-12;
  ro.x_tol = 1e-8;
  auto rb = minimize_nelder_mead(rosen, Eigen::VectorXd::Zero(2), ro);
  CHECK((rb.x - Eigen::VectorXd::Ones(2)).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("initialize: least-squares recovery and zero-started correlation") {
  // Noiseless balanced data: beta1 recovered to high precision.
  Scenario sc = small_scenario(24, CopulaFamily::independence);
  ModelSpec spec = sc.generating_spec();
  spec.copula = CopulaFamily::gaussian;
  spec.correlation_basis = sc.correlation_basis;
  spec.baseline_knots = {0.0, 12.0};

  Dataset data;
  oracles::TestRng rng(41);
  for (int i = 0; i < sc.n; ++i) {
    Eigen::VectorXd times(5), y(5);
    Eigen::MatrixXd covs(5, 4);
    Eigen::VectorXd subj_covs(4);
    for (int c = 0; c < 4; ++c) subj_covs[c] = rng.bernoulli(0.5) ? 1.0 : 0.0;
    for (int j = 0; j < 5; ++j) {
      times[j] = j + 0.1 * (i % 3);
      covs.row(j) = subj_covs;
    }
    SubjectData s = build_subject(spec, std::to_string(i), times,
                                  Eigen::VectorXd::Zero(5), covs, subj_covs, 11.0,
                                  i % 2 == 0);
    for (int j = 0; j < 5; ++j) s.y[j] = s.X.row(j).dot(sc.beta1); // no noise, b = 0
    data.subjects.push_back(s);
  }
  InitOptions io;
  io.warmstart_iter = 0; // isolate the least-squares stage
  ParameterSet init = initialize(data, spec, io);
  CHECK((init.beta1 - sc.beta1).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(init.eta.size() == 4);
  CHECK(init.eta.cwiseAbs().maxCoeff() == 0.0); // initialised as exact zeros
  CHECK(init.sigma > 0.0);
  CHECK(init.lambda.minCoeff() > 0.0);

  // A collinear design is rejected with the column named.
  ModelSpec bad = spec;
  bad.long_covariates = 5;
  Dataset bad_data;
  Eigen::VectorXd times(3), ys(3);
  times << 0.0, 1.0, 2.0;
  ys << 1.0, 2.0, 3.0;
  Eigen::MatrixXd covs(3, 5);
  covs.setOnes(); // duplicates the intercept twice over
  covs.col(1) = times;
  bad_data.subjects.push_back(build_subject(bad, "c", times, ys, covs,
                                            Eigen::VectorXd::Zero(4), 9.0, true));
  CHECK_THROWS_WITH_AS(initialize(bad_data, bad, io),
                       doctest::Contains("rank-deficient"), std::runtime_error);
}

TEST_CASE("warm start beats a cold random start") {
  Scenario sc = small_scenario(40, CopulaFamily::independence);
  sc.copula = CopulaFamily::gaussian;
  sc.eta = Scenario::eta_increasing();
  int warm_wins = 0;
  const int trials = 6;
  for (int rep = 0; rep < trials; ++rep) {
    auto sim = simulate_dataset(sc, 500 + rep);
    ModelSpec spec = fitting_spec(sc, sim.dataset, CopulaFamily::independence);
    FitOptions fo = quick_options();
    fo.max_iter = 60;
    fo.nm_polish_iter = 0;
    fo.optimizer = OptimizerChoice::quasi_newton;
    auto warm = fit(sim.dataset, spec, fo);

    // Same iteration budget from a crude start.
    ParameterSet cold;
    cold.beta1 = Eigen::VectorXd::Zero(6);
    cold.beta2 = Eigen::VectorXd::Zero(4);
    cold.alpha = Eigen::VectorXd::Zero(1);
    cold.D = Eigen::MatrixXd::Identity(2, 2);
    cold.sigma = 1.0;
    cold.lambda = Eigen::VectorXd::Ones(spec.baseline_pieces());
    cold.eta.resize(0);
    FitOptions co = fo;
    co.init = cold;
    auto coldfit = fit(sim.dataset, spec, co);
    if (warm.loglik >= coldfit.loglik) ++warm_wins;
  }
  CHECK(warm_wins >= trials - 1);
}

TEST_CASE("fit on simulated data: bookkeeping and comparisons") {
  Scenario sc = small_scenario(100);
  // Two-coefficient (linear-in-t) correlation spline keeps eta identified at
  // this sample size.
  sc.correlation_basis = BSplineBasis(2, 0.0, 8.3);
  sc.eta.resize(2);
  sc.eta << 0.0, 1.8;
  auto sim = simulate_dataset(sc, 9);

  ModelSpec rjm_spec = fitting_spec(sc, sim.dataset, CopulaFamily::independence);
  FitOptions fo = quick_options();
  fo.compute_vcov = true;
  auto rjm = fit(sim.dataset, rjm_spec, fo);
  CHECK(rjm.convergence.status.rfind("ok", 0) == 0);
  CHECK(rjm.aic == doctest::Approx(-2.0 * rjm.loglik + 2.0 * packed_dim(rjm_spec)));
  CHECK(rjm.bic == doctest::Approx(-2.0 * rjm.loglik +
                                   std::log(100.0) * packed_dim(rjm_spec)));
  REQUIRE(rjm.has_vcov());
  CHECK((rjm.vcov - rjm.vcov.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(rjm.se.minCoeff() >= 0.0);

  ModelSpec gjm_spec = fitting_spec(sc, sim.dataset, CopulaFamily::gaussian);
  FitOptions go = fo;
  go.max_iter = 500;
  go.nm_polish_iter = 200;
  ParameterSet warm = rjm.theta_hat;
  warm.eta = Eigen::VectorXd::Zero(gjm_spec.correlation_dim());
  go.init = warm;
  auto gjm = fit(sim.dataset, gjm_spec, go);
  INFO("GJM status: ", gjm.convergence.status);
  REQUIRE(gjm.has_vcov());
  CHECK(gjm.loglik >= rjm.loglik - 1e-6); // nested model cannot fit better

  auto cmp = compare(rjm, gjm);
  CHECK(cmp.lrt_df == gjm_spec.correlation_dim());
  CHECK(cmp.lrt_stat == doctest::Approx(2.0 * (gjm.loglik - rjm.loglik)));
  CHECK(cmp.delta_aic == doctest::Approx(rjm.aic - gjm.aic));
  CHECK(cmp.lrt_pvalue >= 0.0);
  CHECK(cmp.lrt_pvalue <= 1.0);

  auto self = compare(rjm, rjm);
  CHECK(self.delta_aic == 0.0);
  CHECK(self.lrt_stat == 0.0);
  CHECK_THROWS_AS(compare(gjm, rjm), std::invalid_argument); // not nested

  // Correlation band: inside (-1,1); collapses when Cov(eta) = 0.
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(8.3 * i / 20.0);
  auto band = correlation_band(gjm, grid);
  for (const auto& pt : band) {
    CHECK(pt.lower > -1.0);
    CHECK(pt.upper < 1.0);
    CHECK(pt.lower <= pt.rho);
    CHECK(pt.rho <= pt.upper);
  }
  FittedModel degenerate = gjm;
  degenerate.vcov.setZero();
  auto flat = correlation_band(degenerate, grid);
  for (const auto& pt : flat) {
    CHECK(pt.lower == doctest::Approx(pt.rho));
    CHECK(pt.upper == doctest::Approx(pt.rho));
  }
  CHECK_THROWS_AS(correlation_band(rjm, grid), std::invalid_argument);
}

TEST_CASE("standard errors are invariant to subject order") {
  Scenario sc = small_scenario(30);
  auto sim = simulate_dataset(sc, 13);
  ModelSpec spec = fitting_spec(sc, sim.dataset, CopulaFamily::independence);
  FitOptions fo = quick_options();
  fo.compute_vcov = true;
  auto fit_a = fit(sim.dataset, spec, fo);
  REQUIRE(fit_a.has_vcov());

  // Same theta-hat, permuted subjects: the SE computation must not care.
  Dataset shuffled = sim.dataset;
  std::mt19937 gen(99);
  std::shuffle(shuffled.subjects.begin(), shuffled.subjects.end(), gen);
  FitOptions frozen = fo;
  frozen.init = fit_a.theta_hat;
  frozen.max_iter = 0;
  frozen.nm_polish_iter = 0;
  auto fit_b = fit(shuffled, spec, frozen);
  REQUIRE(fit_b.has_vcov());
  CHECK(fit_a.loglik == doctest::Approx(fit_b.loglik).epsilon(1e-10));
  // Finite-difference Hessians see summation-order roundoff scaled by 1/h^2;
  // the SEs themselves agree to far better than reporting precision.
  double worst = 0.0;
  for (int k = 0; k < fit_a.se.size(); ++k)
    worst = std::max(worst,
                     std::fabs(fit_a.se[k] - fit_b.se[k]) / std::max(fit_a.se[k], 1e-6));
  CHECK(worst < 1e-2);

  // Independent re-optimization from the permuted order lands on the same
  // optimum to optimizer tolerance.
  auto fit_c = fit(shuffled, spec, fo);
  CHECK(fit_a.loglik == doctest::Approx(fit_c.loglik).epsilon(1e-6));
}

TEST_CASE("profile over the t degrees of freedom") {
  Scenario sc = small_scenario(30);
  auto sim = simulate_dataset(sc, 17);
  ModelSpec spec = fitting_spec(sc, sim.dataset, CopulaFamily::student_t);
  FitOptions fo = quick_options();
  fo.max_iter = 80;
  fo.nm_polish_iter = 0;

  auto single = profile_t_df(sim.dataset, spec, {6.0}, fo);
  REQUIRE(single.any_ok);
  CHECK(single.best_nu == 6.0);
  CHECK(single.points.size() == 1);

  auto swept = profile_t_df(sim.dataset, spec, {1.0, 8.0}, fo);
  CHECK_FALSE(swept.points[0].ok); // df <= 2 is recorded as a failure, sweep continues
  CHECK(swept.points[1].ok);
  CHECK(swept.best_nu == 8.0);
}
