#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epr/inference.hpp"

using namespace epr;

TEST_CASE("conditional variance of the squeezed state hits 1/cosh(2r)") {
  const double r = 0.5;
  const double expected = 1.0 / std::cosh(2.0 * r);
  const TwoModeState fock = make_two_mode_squeezed_vacuum(r, 30);
  const TwoModeState gauss = make_gaussian_tmsv(r);
  for (const TwoModeState* state : {&fock, &gauss}) {
    const InferenceResult x = inference_variance_conditional(*state, x_pair());
    const InferenceResult p = inference_variance_conditional(*state, p_pair());
    CHECK(x.variance == doctest::Approx(expected).epsilon(1e-4));
    CHECK(p.variance == doctest::Approx(expected).epsilon(1e-4));
    CHECK(x.method == InferenceMethod::conditional);
    CHECK(!x.estimator.has_value());
  }
  // Frozen reference value.
  CHECK(1.0 / std::cosh(1.0) == doctest::Approx(0.6481).epsilon(1e-3));
}

TEST_CASE("vacuum conditional variance stays at the bound") {
  const InferenceResult x =
      inference_variance_conditional(vacuum_gaussian(), x_pair());
  CHECK(x.variance == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(x.variance <= 1.0);
}

TEST_CASE("unit gain linear inference gives 2 exp(-2r)") {
  const double r = 0.5;
  const TwoModeState state = make_gaussian_tmsv(r);
  const double expected = 2.0 * std::exp(-2.0 * r);
  const InferenceResult x =
      inference_variance_linear(state, x_pair(), LinearEstimator{1.0, 0.0});
  const InferenceResult p =
      inference_variance_linear(state, p_pair(), LinearEstimator{-1.0, 0.0});
  CHECK(x.variance == doctest::Approx(expected).epsilon(1e-12));
  CHECK(p.variance == doctest::Approx(expected).epsilon(1e-12));
  CHECK(x.method == InferenceMethod::linear);
  CHECK(x.estimator->gain == 1.0);
}

TEST_CASE("optimal gain is tanh(2r) and reaches the conditional optimum") {
  const double r = 0.5;
  const TwoModeState state = make_gaussian_tmsv(r);
  const double gx = optimal_gain(state, x_pair());
  const double gp = optimal_gain(state, p_pair());
  CHECK(gx == doctest::Approx(std::tanh(2.0 * r)).epsilon(1e-12));
  CHECK(gp == doctest::Approx(-std::tanh(2.0 * r)).epsilon(1e-12));

  const double at_optimum =
      inference_variance_linear(state, x_pair(), LinearEstimator{gx, 0.0}).variance;
  CHECK(at_optimum == doctest::Approx(1.0 / std::cosh(2.0 * r)).epsilon(1e-12));

  // For a state with Gaussian statistics the best linear estimator is the
  // best estimator outright, so the gridded conditional value must agree.
  const double conditional =
      inference_variance_conditional(state, x_pair()).variance;
  CHECK(conditional == doctest::Approx(at_optimum).epsilon(1e-4));

  // Any other gain does worse.
  CHECK(inference_variance_linear(state, x_pair(), LinearEstimator{gx + 0.1, 0.0})
            .variance > at_optimum);
  CHECK(inference_variance_linear(state, x_pair(), LinearEstimator{gx - 0.1, 0.0})
            .variance > at_optimum);
}

TEST_CASE("offsets absorb displacements") {
  GaussianState g = make_gaussian_tmsv(0.5);
  g.mean << 1.0, 0.5, -0.7, 0.2;
  const TwoModeState state = g;
  const double gain = optimal_gain(state, x_pair());
  const double offset = optimal_offset(state, x_pair(), gain);
  CHECK(offset == doctest::Approx(1.0 - gain * (-0.7)).epsilon(1e-12));

  const double centered =
      inference_variance_linear(state, x_pair(), LinearEstimator{gain, offset})
          .variance;
  CHECK(centered == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-12));
  // A wrong offset adds its squared bias.
  const double biased =
      inference_variance_linear(state, x_pair(), LinearEstimator{gain, offset + 0.3})
          .variance;
  CHECK(biased == doctest::Approx(centered + 0.09).epsilon(1e-12));
}

TEST_CASE("conditional inference never loses to linear inference") {
  const SeparableMixture mix = make_separable_random(4, 5, MixtureFamily::gaussian);
  const TwoModeState state = mix;
  for (auto pair : {x_pair(), p_pair()}) {
    const double g = optimal_gain(state, pair);
    const double d = optimal_offset(state, pair, g);
    const double linear =
        inference_variance_linear(state, pair, LinearEstimator{g, d}).variance;
    const double conditional =
        inference_variance_conditional(state, pair).variance;
    CHECK(conditional <= linear + 1e-6);
  }
}

TEST_CASE("separable states respect the inference product bound") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const SeparableMixture mix =
        make_separable_random(3, seed, MixtureFamily::gaussian);
    const TwoModeState state = mix;
    const double vx = inference_variance_conditional(state, x_pair()).variance;
    const double vp = inference_variance_conditional(state, p_pair()).variance;
    CHECK(std::sqrt(vx) * std::sqrt(vp) >= 1.0 - 1e-6);
  }
}
