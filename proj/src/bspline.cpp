#include "copjm/bspline.hpp"

#include <algorithm>
#include <stdexcept>

namespace copjm {

BSplineBasis::BSplineBasis(int order, double a, double b,
                           std::vector<double> interior_knots)
    : order_(order), a_(a), b_(b), interior_(std::move(interior_knots)) {
  if (order_ < 1) throw std::invalid_argument("BSplineBasis: order must be >= 1");
  if (!(a_ < b_)) throw std::invalid_argument("BSplineBasis: need a < b");
  if (!std::is_sorted(interior_.begin(), interior_.end()))
    throw std::invalid_argument("BSplineBasis: interior knots must be sorted");
  for (double k : interior_)
    if (!(k > a_ && k < b_))
      throw std::invalid_argument("BSplineBasis: interior knots must lie in (a,b)");
  knots_.reserve(2 * order_ + interior_.size());
  knots_.insert(knots_.end(), order_, a_);
  knots_.insert(knots_.end(), interior_.begin(), interior_.end());
  knots_.insert(knots_.end(), order_, b_);
}

double BSplineBasis::clamp_to_domain(double t) const {
  return std::clamp(t, a_, b_);
}

int BSplineBasis::find_span(double t) const {
  // Index i with knots_[i] <= t < knots_[i+1]; t == b maps to the last
  // non-degenerate span so the right endpoint evaluates cleanly.
  int n = size();
  if (t >= b_) return n - 1;
  int lo = order_ - 1, hi = n;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (t < knots_[mid]) hi = mid;
    else lo = mid;
  }
  return lo;
}

Eigen::VectorXd BSplineBasis::eval(double t) const {
  if (!(t >= a_ && t <= b_))
    throw std::domain_error("BSplineBasis::eval: t outside basis domain");
  int span = find_span(t);
  int d = order_ - 1; // degree
  // Triangular Cox-de Boor recursion for the order_ nonzero basis values
  // N_{span-d},...,N_{span} (The NURBS Book, A2.2).
  std::vector<double> nz(order_, 0.0), left(order_, 0.0), right(order_, 0.0);
  nz[0] = 1.0;
  for (int j = 1; j <= d; ++j) {
    left[j] = t - knots_[span + 1 - j];
    right[j] = knots_[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      double denom = right[r + 1] + left[j - r];
      double temp = denom != 0.0 ? nz[r] / denom : 0.0;
      nz[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    nz[j] = saved;
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  for (int j = 0; j <= d; ++j) {
    int idx = span - d + j;
    if (idx >= 0 && idx < size()) out[idx] = nz[j];
  }
  return out;
}

} // namespace copjm
