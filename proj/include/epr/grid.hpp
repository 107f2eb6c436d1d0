#pragma once

#include <Eigen/Dense>

#include "epr/errors.hpp"

namespace epr {

// Uniform quadrature grid.  Bin i covers [lo + i*width, lo + (i+1)*width);
// probabilities are always attached to bin centers.
struct QuadratureGrid {
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;

  double width() const { return (hi - lo) / n_points; }
  double center(int i) const { return lo + (i + 0.5) * width(); }
  Eigen::VectorXd centers() const;
};

// Throws GridError on empty or inverted ranges.
QuadratureGrid make_grid(double lo, double hi, int n_points);

// Knobs for automatically sized grids.
struct GridSpec {
  int n_points = 256;
  double sigmas = 6.0;
};

// Symmetric grid about 0 wide enough to cover mean +- sigmas*sigma.
QuadratureGrid auto_grid(double mean, double sigma, const GridSpec& spec = {});

}  // namespace epr
