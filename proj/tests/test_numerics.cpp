#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "copjm/bspline.hpp"
#include "copjm/derivatives.hpp"
#include "copjm/distributions.hpp"
#include "copjm/quadrature.hpp"
#include "copjm/roots.hpp"
#include "support/oracles.hpp"

using namespace copjm;

namespace {

double bernstein3(int i, double u) {
  static const double binom[4] = {1.0, 3.0, 3.0, 1.0};
  return binom[i] * std::pow(u, i) * std::pow(1.0 - u, 3 - i);
}

} // namespace

TEST_CASE("clamped B-spline basis: endpoints and partition of unity") {
  BSplineBasis cubic(4, 0.0, 10.2);
  CHECK(cubic.size() == 4);
  Eigen::VectorXd at_a = cubic.eval(0.0);
  CHECK(at_a[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k < 4; ++k) CHECK(at_a[k] == doctest::Approx(0.0).epsilon(1e-14));
  Eigen::VectorXd at_b = cubic.eval(10.2);
  CHECK(at_b[3] == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) CHECK(at_b[k] == doctest::Approx(0.0).epsilon(1e-14));

  oracles::TestRng rng(7);
  std::vector<BSplineBasis> bases;
  bases.emplace_back(4, 0.0, 10.2);
  bases.emplace_back(4, 0.0, 10.2, std::vector<double>{2.5, 5.0, 8.0});
  bases.emplace_back(5, 0.0, 14.3);
  bases.emplace_back(2, -1.0, 3.0, std::vector<double>{0.5});
  bases.emplace_back(1, 0.0, 1.0, std::vector<double>{0.25, 0.5});
  for (const auto& basis : bases) {
    for (int trial = 0; trial < 10000; ++trial) {
      double t = rng.uniform(basis.domain_min(), basis.domain_max());
      Eigen::VectorXd v = basis.eval(t);
      CHECK(v.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(v.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("B-spline with no interior knots equals the Bernstein basis") {
  BSplineBasis cubic(4, 0.0, 10.2);
  Eigen::VectorXd mid = cubic.eval(5.1);
  CHECK(mid[0] == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(mid[1] == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(mid[2] == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(mid[3] == doctest::Approx(0.125).epsilon(1e-13));
  oracles::TestRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    double t = rng.uniform(0.0, 10.2);
    double u = t / 10.2;
    Eigen::VectorXd v = cubic.eval(t);
    for (int i = 0; i < 4; ++i)
      CHECK(v[i] == doctest::Approx(bernstein3(i, u)).epsilon(1e-11));
  }
}

TEST_CASE("B-spline domain handling") {
  BSplineBasis basis(4, 0.0, 10.2);
  CHECK_THROWS_AS(basis.eval(-0.1), std::domain_error);
  CHECK_THROWS_AS(basis.eval(10.3), std::domain_error);
  CHECK(basis.clamp_to_domain(12.0) == 10.2);
  CHECK(basis.clamp_to_domain(-1.0) == 0.0);
  CHECK(basis.clamp_to_domain(3.0) == 3.0);
  CHECK_THROWS_AS(BSplineBasis(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BSplineBasis(4, 0.0, 1.0, {2.0}), std::invalid_argument);
}

TEST_CASE("Gauss-Hermite nodes and weights") {
  const double sqrt_pi = std::sqrt(M_PI);
  auto r1 = gauss_hermite(1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(sqrt_pi).epsilon(1e-14));

  auto r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r2.weights[0] == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
  CHECK(r2.weights[1] == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));

  auto r10 = gauss_hermite(10);
  double m4 = 0.0;
  for (int i = 0; i < 10; ++i) m4 += r10.weights[i] * std::pow(r10.nodes[i], 4);
  CHECK(m4 == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-12));

  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);

  // Exactness for monomials of degree <= 2n-1 against the analytic moments.
  for (int n = 1; n <= 12; ++n) {
    auto rule = gauss_hermite(n);
    CHECK(rule.weights.sum() == doctest::Approx(sqrt_pi).epsilon(1e-10));
    for (int i = 0; i < n / 2; ++i) {
      CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
      CHECK(rule.weights[i] == rule.weights[n - 1 - i]);
    }
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double approx = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        double term = rule.weights[i] * std::pow(rule.nodes[i], k);
        approx += term;
        scale += std::fabs(term);
      }
      if (k % 2 == 1) {
        CHECK(std::fabs(approx) <= 1e-12 * std::max(scale, 1.0));
      } else {
        double exact = std::tgamma(0.5 * (k + 1));
        CHECK(approx == doctest::Approx(exact).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-7));

  // Oracle: numeric integration of the density.
  double oracle = 0.5 + oracles::integrate([](double z) { return normal_pdf(z); },
                                           0.0, 1.959964, 1e-13);
  CHECK(normal_cdf(1.959964) == doctest::Approx(oracle).epsilon(1e-10));

  for (int z10 = -50; z10 <= 50; z10 += 5) {
    double z = z10 / 10.0;
    CHECK(normal_quantile(normal_cdf(z)) == doctest::Approx(z).epsilon(1e-10));
  }
  for (double p : {1e-12, 1e-8, 1e-3, 0.3, 0.5, 0.7, 1.0 - 1e-8, 1.0 - 1e-12})
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));

  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);

  // Monotone, bounded.
  double prev = -1.0;
  for (double z = -9.0; z <= 9.0; z += 0.01) {
    double c = normal_cdf(z);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    prev = c;
  }

  // Log CDF deep in the lower tail stays finite and matches the tail oracle.
  CHECK(std::isfinite(normal_logcdf(-38.0)));
  CHECK(normal_logcdf(-5.0) == doctest::Approx(std::log(normal_cdf(-5.0))).epsilon(1e-10));
}

TEST_CASE("student t cdf and quantile") {
  CHECK(t_cdf(0.0, 4.0) == 0.5);
  CHECK(t_cdf(2.776445, 4.0) == doctest::Approx(0.975).epsilon(1e-6));

  double oracle = 0.5 + oracles::integrate([](double w) { return t_pdf(w, 4.0); },
                                           0.0, 2.776445, 1e-12);
  CHECK(t_cdf(2.776445, 4.0) == doctest::Approx(oracle).epsilon(1e-9));

  for (double w = -4.0; w <= 4.0; w += 0.5)
    CHECK(t_cdf(w, 1e6) == doctest::Approx(normal_cdf(w)).epsilon(1e-5));

  for (double nu : {3.0, 4.0, 11.0, 30.0}) {
    for (double p : {1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-6}) {
      double w = t_quantile(p, nu);
      CHECK(t_cdf(w, nu) == doctest::Approx(p).epsilon(1e-9));
    }
    for (double w : {-8.0, -2.0, -0.3, 0.0, 0.7, 3.0, 9.0})
      CHECK(t_quantile(t_cdf(w, nu), nu) == doctest::Approx(w).epsilon(1e-9));
  }

  CHECK_THROWS_AS(t_cdf(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(t_cdf(1.0, -3.0), std::invalid_argument);
  CHECK_THROWS_AS(t_quantile(0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(t_quantile(0.0, 4.0), std::invalid_argument);
}

TEST_CASE("bivariate normal density") {
  CHECK(bvn_pdf(0.0, 0.0, 0.0) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
  oracles::TestRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    double z1 = rng.uniform(-3.0, 3.0), z2 = rng.uniform(-3.0, 3.0);
    CHECK(bvn_pdf(z1, z2, 0.0) ==
          doctest::Approx(normal_pdf(z1) * normal_pdf(z2)).epsilon(1e-13));
    double rho = rng.uniform(-0.95, 0.95);
    CHECK(bvn_pdf(z1, z2, rho) == doctest::Approx(bvn_pdf(z2, z1, rho)).epsilon(1e-13));
    CHECK(bvn_pdf(z1, z2, rho) == doctest::Approx(bvn_pdf(-z1, -z2, rho)).epsilon(1e-13));
  }
  double mass = oracles::integrate2d(
      [](double z1, double z2) { return bvn_pdf(z1, z2, 0.7); }, -8.0, 8.0, -8.0, 8.0,
      800, 800);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(bvn_pdf(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bvn_pdf(0.0, 0.0, -1.2), std::invalid_argument);
}

TEST_CASE("bivariate t density") {
  for (double nu : {3.0, 4.0, 7.0}) {
    double expected = std::exp(std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu)) /
                      (nu * M_PI);
    CHECK(bvt_pdf(0.0, 0.0, 0.0, nu) == doctest::Approx(expected).epsilon(1e-13));
  }
  double mass = oracles::integrate2d(
      [](double w1, double w2) { return bvt_pdf(w1, w2, 0.5, 4.0); }, -60.0, 60.0,
      -60.0, 60.0, 1800, 1800);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
  oracles::TestRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    double w1 = rng.uniform(-3.0, 3.0), w2 = rng.uniform(-3.0, 3.0);
    double rho = rng.uniform(-0.9, 0.9);
    CHECK(bvt_pdf(w1, w2, rho, 1e6) ==
          doctest::Approx(bvn_pdf(w1, w2, rho)).epsilon(1e-4));
    CHECK(bvt_pdf(w1, w2, rho, 4.0) ==
          doctest::Approx(bvt_pdf(w2, w1, rho, 4.0)).epsilon(1e-13));
    CHECK(bvt_pdf(w1, w2, rho, 4.0) ==
          doctest::Approx(bvt_pdf(-w1, -w2, rho, 4.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(bvt_pdf(0.0, 0.0, 1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(bvt_pdf(0.0, 0.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("find_root") {
  CHECK(find_root([](double t) { return t - 3.0; }, 0.0, 10.0, 1e-12) ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(find_root([](double t) { return std::exp(-0.1 * t) - 0.5; }, 0.0, 100.0, 1e-12) ==
        doctest::Approx(std::log(2.0) / 0.1).epsilon(1e-9));
  CHECK_THROWS_AS(find_root([](double t) { return t + 1.0; }, 0.0, 10.0),
                  std::invalid_argument);

  // Random monotone cubic vs a fine grid scan.
  oracles::TestRng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    double a = rng.uniform(0.1, 2.0), b = rng.uniform(0.1, 1.0), c = rng.uniform(0.1, 1.0);
    double d = rng.uniform(-40.0, -5.0);
    auto cubic = [&](double t) { return a * t * t * t + b * t + c * t + d; };
    double brent = find_root(cubic, 0.0, 10.0, 1e-10);
    double best = 0.0, best_abs = 1e300;
    const int grid_n = 1000000;
    for (int i = 0; i <= grid_n; ++i) {
      double t = 10.0 * i / grid_n;
      double v = std::fabs(cubic(t));
      if (v < best_abs) {
        best_abs = v;
        best = t;
      }
    }
    CHECK(brent == doctest::Approx(best).epsilon(1e-5));
    CHECK(std::fabs(brent - best) < 1e-5 + 1e-8);
  }
}

TEST_CASE("numeric hessian") {
  Eigen::MatrixXd A(3, 3);
  A << 4.0, 1.0, 0.5, 1.0, 3.0, -0.2, 0.5, -0.2, 2.0;
  auto quad = [&](const Eigen::VectorXd& x) { return 0.5 * x.dot(A * x); };
  Eigen::VectorXd x0(3);
  x0 << 0.3, -0.4, 1.2;
  Eigen::MatrixXd H = numeric_hessian(quad, x0);
  CHECK((H - A).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((H - H.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // Log-likelihood of a normal sample in (mu, log sigma): the analytic
  // observed information at the MLE is diag(n/sigma^2, 2n).
  oracles::TestRng rng(23);
  const int n = 40;
  std::vector<double> sample(n);
  double mean = 0.0;
  for (auto& v : sample) {
    v = 1.5 + 0.8 * rng.normal();
    mean += v;
  }
  mean /= n;
  double s2 = 0.0;
  for (double v : sample) s2 += (v - mean) * (v - mean);
  s2 /= n;
  auto negll = [&](const Eigen::VectorXd& th) {
    double mu = th[0], sigma = std::exp(th[1]);
    double ll = 0.0;
    for (double v : sample)
      ll += -0.5 * std::pow((v - mu) / sigma, 2) - std::log(sigma) - 0.5 * kLogTwoPi;
    return -ll;
  };
  Eigen::VectorXd mle(2);
  mle << mean, 0.5 * std::log(s2);
  Eigen::MatrixXd info = numeric_hessian(negll, mle);
  CHECK(info(0, 0) == doctest::Approx(n / s2).epsilon(1e-4));
  CHECK(info(1, 1) == doctest::Approx(2.0 * n).epsilon(1e-4));
  CHECK(std::fabs(info(0, 1)) < 1e-3);

  auto bad = [](const Eigen::VectorXd& x) { return std::log(x[0]); };
  Eigen::VectorXd neg(1);
  neg << 1e-6; // central step crosses zero -> NaN
  CHECK_THROWS_AS(numeric_hessian(bad, neg), std::runtime_error);
}

TEST_CASE("chi-squared cdf") {
  CHECK(chi_squared_cdf(3.841458821, 1.0) == doctest::Approx(0.95).epsilon(1e-8));
  CHECK(chi_squared_cdf(9.487729037, 4.0) == doctest::Approx(0.95).epsilon(1e-8));
  CHECK(chi_squared_cdf(0.0, 3.0) == 0.0);
}
