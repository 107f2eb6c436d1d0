#pragma once

#include <iosfwd>
#include <vector>

#include "epr/grid.hpp"
#include "epr/states.hpp"

namespace epr {

enum class Mode { a, b };

// Joint distribution of the rotated quadratures x_theta at A and x_phi at B,
// binned on uniform grids.  theta = 0 measures x, theta = pi/2 measures p.
// probs holds nonnegative bin masses summing to 1 (renormalized after
// clipping to the grid); rows index the A grid.  captured_mass is the mass
// inside the grids before renormalization; joint_distribution requires it to
// be >= 1 - 1e-6 (sampled histograms report whatever they capture).
struct JointQuadratureDistribution {
  QuadratureGrid grid_a;
  QuadratureGrid grid_b;
  double theta = 0.0;
  double phi = 0.0;
  Eigen::MatrixXd probs;
  double captured_mass = 0.0;
};

JointQuadratureDistribution joint_distribution(const TwoModeState& state,
                                               double theta, double phi,
                                               const QuadratureGrid& grid_a,
                                               const QuadratureGrid& grid_b);

// Convenience overload: sizes symmetric grids from the exact marginal
// moments, spec.sigmas standard deviations beyond the mean.
JointQuadratureDistribution joint_distribution(const TwoModeState& state,
                                               double theta, double phi,
                                               const GridSpec& spec = {});

// Per-outcome conditional statistics.  With infer_at_a = true the profile
// conditions on the B outcome and describes the A quadrature (weights, means
// and variances per B bin); bins with mass below 1e-12 are skipped and their
// total mass reported.
struct ConditionalProfile {
  std::vector<double> outcomes;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> variances;
  double skipped_mass = 0.0;
};

ConditionalProfile conditional_profile(const JointQuadratureDistribution& joint,
                                       bool infer_at_a = true);

// Exact mean and standard deviation of the rotated quadrature at one mode,
// from the moment representation (no grids involved).
std::pair<double, double> marginal_moments(const TwoModeState& state, Mode mode,
                                           double angle);

// Mean and variance of the gridded marginal along one axis of a joint.
std::pair<double, double> gridded_marginal_moments(
    const JointQuadratureDistribution& joint, Mode mode);

// Columns: x, y, prob.  Values carry 12 significant digits.
void write_joint_csv(const JointQuadratureDistribution& joint, std::ostream& os);

}  // namespace epr
