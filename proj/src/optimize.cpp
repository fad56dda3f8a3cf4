#include "copjm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace copjm {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, const Eigen::VectorXd& x) {
  double v;
  try {
    v = f(x);
  } catch (...) {
    return kInf;
  }
  return std::isfinite(v) ? v : kInf;
}

} // namespace

OptimResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult result;
  Eigen::VectorXd x = x0;
  double fx = safe_eval(f, x);
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);

  auto gradient = [&](const Eigen::VectorXd& p, double fp) {
    Eigen::VectorXd g(n);
    Eigen::VectorXd q = p;
    for (int k = 0; k < n; ++k) {
      double h = opts.grad_step * (1.0 + std::fabs(p[k]));
      q[k] = p[k] + h;
      double fq = safe_eval(f, q);
      g[k] = std::isfinite(fq) ? (fq - fp) / h : 0.0;
      q[k] = p[k];
    }
    return g;
  };

  Eigen::VectorXd g = gradient(x, fx);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    result.iterations = iter + 1;
    Eigen::VectorXd dir = -(Hinv * g);
    double slope = g.dot(dir);
    if (slope >= 0.0) { // reset to steepest descent if curvature went bad
      Hinv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    double f_new = kInf;
    Eigen::VectorXd x_new;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + step * dir;
      f_new = safe_eval(f, x_new);
      if (f_new <= fx + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(f_new < fx)) { // no acceptable step; declare convergence at x
      result.converged = true;
      break;
    }
    Eigen::VectorXd g_new = gradient(x_new, f_new);
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd yv = g_new - g;
    double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      Eigen::VectorXd Hy = Hinv * yv;
      double yHy = yv.dot(Hy);
      Hinv += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
              (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    bool f_small = std::fabs(fx - f_new) < opts.f_tol;
    bool x_small = s.cwiseAbs().maxCoeff() < opts.x_tol;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (f_small && x_small) {
      result.converged = true;
      break;
    }
  }
  result.x = x;
  result.f = fx;
  result.gradient_norm = g.norm();
  return result;
}

OptimResult minimize_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                 const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;
  std::vector<Eigen::VectorXd> v(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int k = 0; k < n; ++k) {
    double step = x0[k] != 0.0 ? 0.05 * std::fabs(x0[k]) : 0.00025;
    v[k + 1][k] += step;
  }
  for (int k = 0; k <= n; ++k) fv[k] = safe_eval(f, v[k]);

  OptimResult result;
  std::vector<int> order(n + 1);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    result.iterations = iter + 1;
    for (int k = 0; k <= n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    int best = order[0], worst = order[n], second = order[n - 1];

    double spread = 0.0;
    for (int k = 0; k <= n; ++k)
      spread = std::max(spread, (v[k] - v[best]).cwiseAbs().maxCoeff());
    result.simplex_size = spread;
    if (std::fabs(fv[worst] - fv[best]) < opts.f_tol && spread < opts.x_tol) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int k = 0; k <= n; ++k)
      if (k != worst) centroid += v[k];
    centroid /= n;

    Eigen::VectorXd xr = centroid + alpha * (centroid - v[worst]);
    double fr = safe_eval(f, xr);
    if (fr < fv[best]) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      double fe = safe_eval(f, xe);
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
    } else {
      bool outside = fr < fv[worst];
      Eigen::VectorXd xc;
      if (outside) xc = centroid + beta * (xr - centroid);
      else xc = centroid - beta * (centroid - v[worst]);
      double fc = safe_eval(f, xc);
      if (fc < std::min(fr, fv[worst])) {
        v[worst] = xc;
        fv[worst] = fc;
      } else { // shrink toward the best vertex
        for (int k = 0; k <= n; ++k) {
          if (k == best) continue;
          v[k] = v[best] + delta * (v[k] - v[best]);
          fv[k] = safe_eval(f, v[k]);
        }
      }
    }
  }
  int best = 0;
  for (int k = 1; k <= n; ++k)
    if (fv[k] < fv[best]) best = k;
  result.x = v[best];
  result.f = fv[best];
  return result;
}

} // namespace copjm
