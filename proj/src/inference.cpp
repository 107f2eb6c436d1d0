#include "epr/inference.hpp"

#include <cmath>

namespace epr {
namespace {

// Covariance entries of (x_theta at A, x_phi at B) from exact moments.
struct PairMoments {
  double mean_x, mean_y, var_x, var_y, cov;
};

PairMoments pair_moments(const TwoModeState& state, QuadraturePair pair) {
  const Moments4 m = two_mode_moments(state);
  Eigen::Vector4d ca(std::cos(pair.theta_a), std::sin(pair.theta_a), 0.0, 0.0);
  Eigen::Vector4d cb(0.0, 0.0, std::cos(pair.phi_b), std::sin(pair.phi_b));
  return PairMoments{ca.dot(m.mean), cb.dot(m.mean), ca.dot(m.cov * ca),
                     cb.dot(m.cov * cb), ca.dot(m.cov * cb)};
}

double average_conditional_variance(const JointQuadratureDistribution& joint) {
  const ConditionalProfile profile = conditional_profile(joint, true);
  double acc = 0.0;
  for (std::size_t k = 0; k < profile.weights.size(); ++k)
    acc += profile.weights[k] * profile.variances[k];
  return acc;
}

}  // namespace

InferenceResult inference_variance_conditional(const TwoModeState& state,
                                               QuadraturePair pair,
                                               const GridSpec& spec) {
  const JointQuadratureDistribution joint =
      joint_distribution(state, pair.theta_a, pair.phi_b, spec);
  return InferenceResult{average_conditional_variance(joint),
                         InferenceMethod::conditional, std::nullopt, pair};
}

InferenceResult inference_variance_conditional(const TwoModeState& state,
                                               QuadraturePair pair,
                                               const QuadratureGrid& grid_a,
                                               const QuadratureGrid& grid_b) {
  const JointQuadratureDistribution joint =
      joint_distribution(state, pair.theta_a, pair.phi_b, grid_a, grid_b);
  return InferenceResult{average_conditional_variance(joint),
                         InferenceMethod::conditional, std::nullopt, pair};
}

InferenceResult inference_variance_linear(const TwoModeState& state,
                                          QuadraturePair pair,
                                          const LinearEstimator& estimator) {
  const PairMoments m = pair_moments(state, pair);
  const double g = estimator.gain;
  const double bias = m.mean_x - g * m.mean_y - estimator.offset;
  const double var = m.var_x - 2.0 * g * m.cov + g * g * m.var_y;
  return InferenceResult{var + bias * bias, InferenceMethod::linear, estimator,
                         pair};
}

double optimal_offset(const TwoModeState& state, QuadraturePair pair, double gain) {
  const PairMoments m = pair_moments(state, pair);
  return m.mean_x - gain * m.mean_y;
}

double optimal_gain(const TwoModeState& state, QuadraturePair pair) {
  const PairMoments m = pair_moments(state, pair);
  if (m.var_y <= 0.0) return 0.0;
  return m.cov / m.var_y;
}

}  // namespace epr
