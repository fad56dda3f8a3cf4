#include "copjm/hazard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace copjm {

namespace {

// Integral of exp(gamma * u) over [u1, u2].
inline double exp_segment(double gamma, double u1, double u2) {
  double du = u2 - u1;
  if (gamma == 0.0) return du;
  return std::exp(gamma * u1) * std::expm1(gamma * du) / gamma;
}

} // namespace

double linear_predictor_long(const SubjectData& subject, int j,
                             const Eigen::VectorXd& b, const ParameterSet& params) {
  if (j < 0 || j >= subject.n_obs())
    throw std::invalid_argument("linear_predictor_long: observation index out of range");
  if (b.size() != subject.Z.cols() || params.beta1.size() != subject.X.cols())
    throw std::invalid_argument("linear_predictor_long: dimension mismatch");
  return subject.X.row(j).dot(params.beta1) + subject.Z.row(j).dot(b);
}

HazardExponent hazard_exponent(const SubjectData& subject, const Eigen::VectorXd& b,
                               const ParameterSet& params, const ModelSpec& spec) {
  HazardExponent e;
  e.c0 = subject.w.dot(params.beta2) + params.alpha_for(0) * b[0];
  if (spec.re_dim() == 2) e.gamma = params.alpha_for(1) * b[1];
  return e;
}

double hazard(const SubjectData& subject, double t, const Eigen::VectorXd& b,
              const ParameterSet& params, const ModelSpec& spec) {
  const auto& v = spec.baseline_knots;
  const int K = spec.baseline_pieces();
  if (t < 0.0 || t > v.back())
    throw std::domain_error("hazard: t outside the baseline-hazard grid");
  int k = 0;
  while (k < K - 1 && t >= v[k + 1]) ++k;
  auto e = hazard_exponent(subject, b, params, spec);
  return params.lambda[k] * std::exp(e.c0 + e.gamma * t);
}

double cumulative_hazard(const SubjectData& subject, double s, double t,
                         const Eigen::VectorXd& b, const ParameterSet& params,
                         const ModelSpec& spec) {
  const auto& v = spec.baseline_knots;
  if (!(s >= 0.0 && t >= s))
    throw std::invalid_argument("cumulative_hazard: need 0 <= s <= t");
  if (t > v.back())
    throw std::domain_error("cumulative_hazard: t beyond the baseline-hazard grid");
  if (t == s) return 0.0;
  auto e = hazard_exponent(subject, b, params, spec);
  const double scale = std::exp(e.c0);
  double total = 0.0;
  for (int k = 0; k < spec.baseline_pieces(); ++k) {
    double u1 = std::max(s, v[k]);
    double u2 = std::min(t, v[k + 1]);
    if (u2 <= u1) continue;
    total += params.lambda[k] * scale * exp_segment(e.gamma, u1, u2);
  }
  return total;
}

double invert_cumulative_hazard(const SubjectData& subject, double s, double target,
                                const Eigen::VectorXd& b, const ParameterSet& params,
                                const ModelSpec& spec) {
  const auto& v = spec.baseline_knots;
  if (!(s >= 0.0 && s <= v.back()))
    throw std::invalid_argument("invert_cumulative_hazard: s outside the hazard grid");
  if (!(target >= 0.0))
    throw std::invalid_argument("invert_cumulative_hazard: target must be nonnegative");
  if (target == 0.0) return s;
  auto e = hazard_exponent(subject, b, params, spec);
  const double scale = std::exp(e.c0);
  double remaining = target;
  for (int k = 0; k < spec.baseline_pieces(); ++k) {
    double u1 = std::max(s, v[k]);
    double u2 = v[k + 1];
    if (u2 <= u1) continue;
    double rate = params.lambda[k] * scale;
    double capacity = rate * exp_segment(e.gamma, u1, u2);
    if (remaining <= capacity) {
      if (e.gamma == 0.0) return u1 + remaining / rate;
      double dt = std::log1p(e.gamma * remaining / (rate * std::exp(e.gamma * u1))) / e.gamma;
      return u1 + dt;
    }
    remaining -= capacity;
  }
  return std::numeric_limits<double>::infinity();
}

} // namespace copjm
