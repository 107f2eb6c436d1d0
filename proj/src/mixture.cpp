#include "epr/mixture.hpp"

#include <cmath>
#include <sstream>

namespace epr {

void validate(const SingleModeState& state) {
  std::visit([](const auto& s) { validate(s); }, state);
}

SeparableMixture make_mixture(std::vector<MixtureTerm> terms) {
  double total = 0.0;
  std::vector<MixtureTerm> kept;
  kept.reserve(terms.size());
  for (auto& term : terms) {
    if (term.weight < 0.0)
      throw PhysicalityError("mixture weight is negative");
    if (term.weight < 1e-14) continue;
    total += term.weight;
    kept.push_back(std::move(term));
  }
  if (kept.empty() || total <= 0.0)
    throw PhysicalityError("mixture has no terms with positive weight");
  for (auto& term : kept) term.weight /= total;
  return SeparableMixture{std::move(kept)};
}

void validate(const SeparableMixture& mixture) {
  if (mixture.terms.empty())
    throw PhysicalityError("mixture has no terms");
  double total = 0.0;
  for (const auto& term : mixture.terms) {
    if (!(term.weight > 0.0) || term.weight > 1.0)
      throw PhysicalityError("mixture weight outside (0, 1]");
    total += term.weight;
    validate(term.state_a);
    validate(term.state_b);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "mixture weights sum to " << total << ", not 1";
    throw PhysicalityError(msg.str());
  }
}

}  // namespace epr
