#include "epr/grid.hpp"

#include <cmath>

namespace epr {

Eigen::VectorXd QuadratureGrid::centers() const {
  Eigen::VectorXd c(n_points);
  for (int i = 0; i < n_points; ++i) c[i] = center(i);
  return c;
}

QuadratureGrid make_grid(double lo, double hi, int n_points) {
  if (n_points < 2) throw GridError("grid needs at least 2 points");
  if (!(hi > lo)) throw GridError("grid range is empty or inverted");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw GridError("grid bounds must be finite");
  return QuadratureGrid{lo, hi, n_points};
}

QuadratureGrid auto_grid(double mean, double sigma, const GridSpec& spec) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw GridError("auto grid needs a positive finite sigma");
  const double half = std::abs(mean) + spec.sigmas * sigma;
  return make_grid(-half, half, spec.n_points);
}

}  // namespace epr
