#include "copjm/derivatives.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace copjm {

namespace {

double checked_eval(const std::function<double(const Eigen::VectorXd&)>& f,
                    const Eigen::VectorXd& x) {
  double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "numeric_hessian: non-finite evaluation at theta = [";
    for (int i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << "]";
    throw std::runtime_error(msg.str());
  }
  return v;
}

} // namespace

Eigen::MatrixXd numeric_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& theta,
                                const HessianOptions& opts) {
  const int n = static_cast<int>(theta.size());
  Eigen::VectorXd h(n);
  for (int k = 0; k < n; ++k)
    h[k] = std::max(opts.rel_step * std::fabs(theta[k]), opts.abs_step);

  Eigen::MatrixXd hess(n, n);
  Eigen::VectorXd x = theta;
  const double f0 = checked_eval(f, theta);
  for (int k = 0; k < n; ++k) {
    x = theta;
    x[k] = theta[k] + h[k];
    double fp = checked_eval(f, x);
    x[k] = theta[k] - h[k];
    double fm = checked_eval(f, x);
    hess(k, k) = (fp - 2.0 * f0 + fm) / (h[k] * h[k]);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      x = theta;
      x[k] += h[k]; x[l] += h[l];
      double fpp = checked_eval(f, x);
      x = theta;
      x[k] += h[k]; x[l] -= h[l];
      double fpm = checked_eval(f, x);
      x = theta;
      x[k] -= h[k]; x[l] += h[l];
      double fmp = checked_eval(f, x);
      x = theta;
      x[k] -= h[k]; x[l] -= h[l];
      double fmm = checked_eval(f, x);
      double v = (fpp - fpm - fmp + fmm) / (4.0 * h[k] * h[l]);
      hess(k, l) = v;
      hess(l, k) = v;
    }
  }
  return 0.5 * (hess + hess.transpose());
}

Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& theta, double f0,
                                 double rel_step) {
  const int n = static_cast<int>(theta.size());
  Eigen::VectorXd g(n);
  Eigen::VectorXd x = theta;
  for (int k = 0; k < n; ++k) {
    double h = rel_step * (1.0 + std::fabs(theta[k]));
    x[k] = theta[k] + h;
    g[k] = (f(x) - f0) / h;
    x[k] = theta[k];
  }
  return g;
}

} // namespace copjm
