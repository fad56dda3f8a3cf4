#include "copjm/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace copjm {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

// Acklam's rational approximation for the standard normal quantile,
// refined below by one Halley step against erfc.
double acklam_quantile(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Continued fraction for the incomplete beta (Numerical Recipes betacf).
double beta_cont_frac(double a, double b, double x) {
  const int max_iter = 300;
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 10.0 * eps) break;
  }
  return h;
}

// Lower incomplete gamma by series (x < a+1) or continued fraction.
double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cont_frac(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / 1e-16;
  double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrtTwoPi; }

double normal_logpdf(double z) { return -0.5 * (z * z + kLogTwoPi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_logcdf(double z) {
  if (z > -10.0) {
    double c = normal_cdf(z);
    if (c > 0.0) return std::log(c);
  }
  // Lower tail: log Phi(z) = log phi(z) - log(-z) + log(1 - 1/z^2 + 3/z^4 - ...)
  double z2 = z * z;
  double corr = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return normal_logpdf(z) - std::log(-z) + std::log(corr);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  double x = acklam_quantile(p);
  // One Halley refinement against the erfc-based CDF.
  double e = normal_cdf(x) - p;
  double u = e / normal_pdf(x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double t_logpdf(double w, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("t_logpdf: nu must be positive");
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * M_PI) -
         0.5 * (nu + 1.0) * std::log1p(w * w / nu);
}

double t_pdf(double w, double nu) { return std::exp(t_logpdf(w, nu)); }

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_cont_frac(a, b, x) / a;
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta) *
                   beta_cont_frac(b, a, 1.0 - x) / b;
}

double t_cdf(double w, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("t_cdf: nu must be positive");
  if (w == 0.0) return 0.5;
  double x = nu / (nu + w * w);
  double tail = 0.5 * inc_beta(0.5 * nu, 0.5, x);
  return w > 0.0 ? 1.0 - tail : tail;
}

double t_logcdf(double w, double nu) {
  if (w > -8.0) {
    double c = t_cdf(w, nu);
    if (c > 0.0) return std::log(c);
  }
  // Far lower tail: Psi(w;nu) ~ pdf(w) * |w| / nu  (leading term).
  return t_logpdf(w, nu) + std::log(-w / nu);
}

double t_quantile(double p, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("t_quantile: nu must be positive");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("t_quantile: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  // Start from the normal quantile mapped through a large-nu expansion
  // (Cornish-Fisher first terms), then polish with safeguarded Newton.
  double z = normal_quantile(p);
  double g1 = (z * z * z + z) / 4.0;
  double g2 = (5.0 * std::pow(z, 5) + 16.0 * z * z * z + 3.0 * z) / 96.0;
  double w = z + g1 / nu + g2 / (nu * nu);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    double f = t_cdf(w, nu) - p;
    if (f > 0.0) hi = std::min(hi, w);
    else lo = std::max(lo, w);
    double step = f / t_pdf(w, nu);
    double w_next = w - step;
    if (!(w_next > lo && w_next < hi)) {
      // Bisect within the running bracket; widen if one side is open.
      if (std::isinf(lo)) w_next = (hi < 0 ? 2.0 * hi - 1.0 : -1.0);
      else if (std::isinf(hi)) w_next = (lo > 0 ? 2.0 * lo + 1.0 : 1.0);
      else w_next = 0.5 * (lo + hi);
    }
    if (std::fabs(w_next - w) < 1e-12 * (1.0 + std::fabs(w_next))) {
      w = w_next;
      break;
    }
    w = w_next;
  }
  return w;
}

double bvn_logpdf(double z1, double z2, double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("bvn_pdf: |rho| must be < 1");
  double omr2 = (1.0 - rho) * (1.0 + rho);
  double q = (z1 * z1 - 2.0 * rho * z1 * z2 + z2 * z2) / omr2;
  return -0.5 * q - 0.5 * std::log(omr2) - kLogTwoPi;
}

double bvn_pdf(double z1, double z2, double rho) {
  return std::exp(bvn_logpdf(z1, z2, rho));
}

double bvt_logpdf(double w1, double w2, double rho, double nu) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("bvt_pdf: |rho| must be < 1");
  if (!(nu > 0.0)) throw std::invalid_argument("bvt_pdf: nu must be positive");
  double omr2 = (1.0 - rho) * (1.0 + rho);
  double q = (w1 * w1 - 2.0 * rho * w1 * w2 + w2 * w2) / omr2;
  return std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu) -
         std::log(nu * M_PI) - 0.5 * std::log(omr2) -
         (0.5 * nu + 1.0) * std::log1p(q / nu);
}

double bvt_pdf(double w1, double w2, double rho, double nu) {
  return std::exp(bvt_logpdf(w1, w2, rho, nu));
}

double inc_gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0)
    throw std::invalid_argument("inc_gamma_p: requires x >= 0, a > 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cont_frac(a, x);
}

double chi_squared_cdf(double x, double df) {
  if (x <= 0.0) return 0.0;
  return inc_gamma_p(0.5 * df, 0.5 * x);
}

} // namespace copjm
