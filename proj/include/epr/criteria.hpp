#pragma once

#include <map>
#include <string>
#include <vector>

#include "epr/inference.hpp"

namespace epr {

enum class CriterionName {
  reid_product,
  linear_product,
  any_g_product,
  two_mode_squeezing,
  duan_sum,
};

const char* criterion_label(CriterionName name);

// One evaluated inequality.  `violated` means lhs is below the separability
// bound by more than the numerical margin: lhs < bound - 1e-9, and for
// gridded evaluations the gap must also exceed convergence_delta (grid
// refinement change plus clipped-tail allowance), so discretization error can
// never manufacture a violation.
struct CriterionReport {
  CriterionName name = CriterionName::reid_product;
  double lhs = 0.0;
  double bound = 0.0;
  bool violated = false;
  InferenceMethod method = InferenceMethod::linear;
  std::map<std::string, double> params;
  std::optional<double> convergence_delta;
  std::string note;

  double margin() const { return bound - lhs; }
  double relative_margin() const { return (bound - lhs) / bound; }
};

struct CriteriaOptions {
  UncertaintyBounds bounds;
  GridSpec grid;
};

// Product of inference standard deviations Delta_inf(x)*Delta_inf(p) against
// the separability bound C.  The conditional method integrates the exact
// conditional variances over a grid (and carries convergence_delta); the
// linear method uses the optimal linear estimators, evaluated from moments.
CriterionReport reid_epr_criterion(const TwoModeState& state,
                                   InferenceMethod method,
                                   const CriteriaOptions& opts = {});

// Product of linear-inference variances at fixed gains g (for x) and h (for
// p), against C^2 + g^2 h^2 D^2.
CriterionReport linear_product_criterion(const TwoModeState& state, double g,
                                         double h,
                                         const CriteriaOptions& opts = {});

// Common-gain variant: Var(x_A - g x_B) * Var(p_A + g p_B) against
// C^2 (1 + g^4).  Holds for every separable state at every g.
CriterionReport any_g_product_criterion(const TwoModeState& state, double g,
                                        const CriteriaOptions& opts = {});

// max(Var(x_A - x_B), Var(p_A - h p_B)) with the better sign h = +-1,
// against 2 C^2.  A violation certifies two-mode squeezing strong enough to
// exclude separability.
CriterionReport two_mode_squeezing_criterion(const TwoModeState& state,
                                             const CriteriaOptions& opts = {});

// Var(x_A - x_B) + Var(p_A + p_B) against 2(C + D).
CriterionReport duan_sum_criterion(const TwoModeState& state,
                                   const CriteriaOptions& opts = {});

// Evaluates every criterion; gain-parameterized ones are optimized over the
// sweep (largest margin of violation).  Violated reports lead, ordered by
// relative margin with the tightest bound first; non-violated reports follow,
// closest to violation first.
std::vector<CriterionReport> evaluate_all(
    const TwoModeState& state, const std::vector<double>& gain_sweep,
    InferenceMethod reid_method = InferenceMethod::conditional,
    const CriteriaOptions& opts = {});

}  // namespace epr
