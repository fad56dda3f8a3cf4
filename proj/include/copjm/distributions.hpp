#pragma once

// Univariate normal / Student-t densities, CDFs and quantiles, plus the
// bivariate normal and t densities used by the copula contributions.
// Everything is plain double precision; quantiles and CDFs are mutually
// inverse to ~1e-12 (normal) and ~1e-9 (t) over the open unit interval.

namespace copjm {

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
inline constexpr double kSqrtTwoPi = 2.5066282746310005024157652848110;

double normal_pdf(double z);
double normal_logpdf(double z);
double normal_cdf(double z);
// log Phi(z) with an asymptotic lower-tail branch so that very negative z
// still return finite, accurate values instead of log(0).
double normal_logcdf(double z);
double normal_quantile(double p);

double t_pdf(double w, double nu);
double t_logpdf(double w, double nu);
double t_cdf(double w, double nu);
double t_logcdf(double w, double nu);
double t_quantile(double p, double nu);

// Standardised bivariate normal density, correlation rho, |rho| < 1.
double bvn_pdf(double z1, double z2, double rho);
double bvn_logpdf(double z1, double z2, double rho);

// Bivariate t density with correlation-form scale matrix [[1,rho],[rho,1]]
// and nu degrees of freedom.
double bvt_pdf(double w1, double w2, double rho, double nu);
double bvt_logpdf(double w1, double w2, double rho, double nu);

// Regularized incomplete beta I_x(a,b) and lower incomplete gamma P(a,x).
double inc_beta(double a, double b, double x);
double inc_gamma_p(double a, double x);

double chi_squared_cdf(double x, double df);

} // namespace copjm
