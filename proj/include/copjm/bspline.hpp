#pragma once

#include <Eigen/Core>
#include <vector>

namespace copjm {

// Clamped B-spline basis of a given order (order = degree + 1) on [a,b].
// Boundary knots carry multiplicity equal to the order, so the basis forms
// a partition of unity on the whole domain and collapses to the Bernstein
// basis when there are no interior knots.
class BSplineBasis {
public:
  BSplineBasis() = default;
  BSplineBasis(int order, double a, double b,
               std::vector<double> interior_knots = {});

  int order() const { return order_; }
  int size() const { return order_ + static_cast<int>(interior_.size()); }
  double domain_min() const { return a_; }
  double domain_max() const { return b_; }
  const std::vector<double>& interior_knots() const { return interior_; }

  // Basis values at t via the Cox-de Boor recursion. Throws std::domain_error
  // for t outside [a,b]; callers that want extrapolation-free evaluation
  // clamp explicitly with clamp_to_domain.
  Eigen::VectorXd eval(double t) const;

  double clamp_to_domain(double t) const;

private:
  int find_span(double t) const;

  int order_ = 0;
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> interior_;
  std::vector<double> knots_; // full clamped knot vector
};

// Free-function form used throughout the likelihood code.
inline Eigen::VectorXd bspline_basis(double t, const BSplineBasis& basis) {
  return basis.eval(t);
}

} // namespace copjm
