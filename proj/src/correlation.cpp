#include "copjm/correlation.hpp"

#include <stdexcept>

namespace copjm {

double eval_r(const CorrelationCurve& curve, double t) {
  if (curve.eta.size() != curve.basis.size())
    throw std::invalid_argument("CorrelationCurve: eta length must match basis size");
  return curve.basis.eval(t).dot(curve.eta);
}

double eval_rho(const CorrelationCurve& curve, double t) {
  return rho_from_r(eval_r(curve, t));
}

double eval_tau(const CorrelationCurve& curve, double t) {
  return tau_from_rho(eval_rho(curve, t));
}

} // namespace copjm
