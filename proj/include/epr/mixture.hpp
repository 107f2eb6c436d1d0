#pragma once

#include <variant>
#include <vector>

#include "epr/fock.hpp"
#include "epr/gaussian.hpp"

namespace epr {

using SingleModeState = std::variant<SingleModeFock, SingleModeGaussian>;

// One product term P_r * rho_r^A tensor rho_r^B of a separable decomposition.
struct MixtureTerm {
  double weight = 0.0;
  SingleModeState state_a;
  SingleModeState state_b;
};

// Convex mixture of product states.  Keeping the terms (instead of flattening
// to one density matrix) lets observables be computed per term, which is both
// cheaper and an independent route the flattened computation is checked
// against.
struct SeparableMixture {
  std::vector<MixtureTerm> terms;
};

// Drops terms with weight below 1e-14 and renormalizes the rest to sum 1.
// Throws PhysicalityError on negative weights or an empty mixture.
SeparableMixture make_mixture(std::vector<MixtureTerm> terms);

// Validates weights (positive, sum 1 within 1e-12) and every local state.
void validate(const SeparableMixture& mixture);

void validate(const SingleModeState& state);

}  // namespace epr
