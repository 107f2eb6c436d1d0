#pragma once

#include <numbers>
#include <optional>

#include "epr/quadrature.hpp"

namespace epr {

// Linear estimate of an A quadrature from a B outcome: estimate = g*y + d.
struct LinearEstimator {
  double gain = 0.0;
  double offset = 0.0;
};

enum class InferenceMethod { conditional, linear };

// Measurement settings: theta at station A, phi at station B.
struct QuadraturePair {
  double theta_a = 0.0;
  double phi_b = 0.0;
};

inline QuadraturePair x_pair() { return {0.0, 0.0}; }
inline QuadraturePair p_pair() {
  return {std::numbers::pi / 2.0, std::numbers::pi / 2.0};
}

struct InferenceResult {
  double variance = 0.0;
  InferenceMethod method = InferenceMethod::conditional;
  std::optional<LinearEstimator> estimator;
  QuadraturePair pair;
};

// Average conditional variance of the A quadrature given the B outcome,
// integrated over the gridded joint distribution.  This is the smallest
// inference variance any estimator can reach.
InferenceResult inference_variance_conditional(const TwoModeState& state,
                                               QuadraturePair pair,
                                               const GridSpec& spec = {});
InferenceResult inference_variance_conditional(const TwoModeState& state,
                                               QuadraturePair pair,
                                               const QuadratureGrid& grid_a,
                                               const QuadratureGrid& grid_b);

// Mean-square error of the linear estimate g*y + d, evaluated exactly from
// second moments.  Equals Var(x) - 2g Cov(x,y) + g^2 Var(y) at the optimal
// offset.
InferenceResult inference_variance_linear(const TwoModeState& state,
                                          QuadraturePair pair,
                                          const LinearEstimator& estimator);

// Offset that removes the bias of a given gain: d = <x> - g<y>.
double optimal_offset(const TwoModeState& state, QuadraturePair pair, double gain);

// Gain minimizing the linear mean-square error: g = Cov(x,y)/Var(y).
double optimal_gain(const TwoModeState& state, QuadraturePair pair);

}  // namespace epr
