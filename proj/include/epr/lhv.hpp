#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epr/experiment.hpp"
#include "epr/quadrature.hpp"

namespace epr {

// One hidden variable lambda: definite phase-space values for both stations.
struct HiddenVariableSample {
  double x_a = 0.0, p_a = 0.0, x_b = 0.0, p_b = 0.0;
};

struct LhvEnsemble {
  std::vector<HiddenVariableSample> samples;
  std::string source;
};

// Station response to a setting: the reported outcome for angle theta given
// lambda is cos(theta)*x + sin(theta)*p plus optional Gaussian reading noise
// whose width interpolates between sigma_x (theta = 0) and sigma_p
// (theta = pi/2).  With zero widths the response is dispersion-free.
struct ResponseModel {
  double sigma_x = 0.0;
  double sigma_p = 0.0;
  bool dispersion_free() const { return sigma_x == 0.0 && sigma_p == 0.0; }
  double width(double angle) const;
};

// i.i.d. draws of lambda from the Wigner function of a Gaussian state (a
// genuine probability density there), giving a local realistic model that
// reproduces all quadrature statistics of the state.
LhvEnsemble wigner_sample(const GaussianState& state, int n_samples,
                          std::uint64_t seed);

// Simulated measurement run of the model at fixed settings.
MeasurementRecord lhv_record(const LhvEnsemble& ensemble, double theta, double phi,
                             const ResponseModel& response = {},
                             std::uint64_t noise_seed = 1);

// Binned joint distribution the model predicts at the given settings.
JointQuadratureDistribution lhv_predicts(const LhvEnsemble& ensemble, double theta,
                                         double phi, const QuadratureGrid& grid_a,
                                         const QuadratureGrid& grid_b,
                                         const ResponseModel& response = {},
                                         std::uint64_t noise_seed = 1);

// Whether each lambda's response dispersions respect the local uncertainty
// products (Delta x * Delta p >= C per station).  Dispersion-free responses
// have zero product, so they fail; the inference-product criterion presumes
// measured statistics come from states obeying the uncertainty relation, and
// this check makes a model's violation of that premise explicit.
struct ProvisoReport {
  std::size_t n_samples = 0;
  double product_a = 0.0;  // response dispersion product at station A
  double product_b = 0.0;
  double fraction_satisfying = 0.0;
  bool satisfied = false;
};
ProvisoReport check_uncertainty_proviso(const LhvEnsemble& ensemble,
                                        const ResponseModel& response = {},
                                        const UncertaintyBounds& bounds = {});

// Marginal-variance comparison between a model record and the quantum
// prediction, flagged at n_se standard errors.  Smeared responses reproduce
// conditional statistics only at the price of inflated marginals, which this
// check exposes.
struct MomentCheckEntry {
  std::string label;
  double sample = 0.0;
  double quantum = 0.0;
  double se = 0.0;
  bool consistent = false;
};
std::vector<MomentCheckEntry> lhv_moment_check(const MeasurementRecord& x_record,
                                               const MeasurementRecord& p_record,
                                               const TwoModeState& source,
                                               double n_se = 5.0);

// Total variation distance 0.5*sum|p - q| between two joints on identical
// grids, after aggregating into block x block superbins.  Aggregation keeps
// the comparison meaningful for sampled histograms, whose per-bin noise at
// fine resolution swamps any real discrepancy.
double total_variation(const JointQuadratureDistribution& p,
                       const JointQuadratureDistribution& q, int block = 1);

// Columns: x_a, p_a, x_b, p_b.
void write_ensemble_csv(const LhvEnsemble& ensemble, std::ostream& os);

}  // namespace epr
