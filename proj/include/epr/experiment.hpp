#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "epr/criteria.hpp"

namespace epr {

// Shots of a fixed-setting joint measurement: outcome pairs (A, B) for the
// rotated quadratures x_theta, x_phi.
struct MeasurementRecord {
  double theta = 0.0;
  double phi = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> outcomes;
};

// Draws n_shots samples of the joint quadrature distribution.  Gaussian
// states are sampled exactly; number-basis states and mixtures are sampled
// from the gridded joint by inverse transform with uniform jitter inside the
// selected bin.
MeasurementRecord run_experiment(const TwoModeState& state, double theta,
                                 double phi, int n_shots, std::uint64_t seed,
                                 const GridSpec& spec = {});

struct EstimateOptions {
  UncertaintyBounds bounds;
  // Fixed gains; when unset the empirically optimal gain cov/var is used.
  std::optional<double> g;
  std::optional<double> h;
  int conditional_bins = 256;
  // A binned conditional estimate is suppressed when fewer bins than this
  // hold at least 2 shots.
  int min_occupied_bins = 100;
  int bootstrap_resamples = 50;
  std::uint64_t bootstrap_seed = 20240817;
};

struct EstimatedCriterion {
  CriterionReport report;
  double se = 0.0;  // bootstrap standard error of lhs
};

struct EstimateResult {
  std::vector<EstimatedCriterion> criteria;
  std::vector<std::string> warnings;
};

// Estimates every criterion from one x-setting record and one p-setting
// record.  `violated` on an estimated report means lhs < bound - 3*se.
EstimateResult estimate_criteria(const MeasurementRecord& x_record,
                                 const MeasurementRecord& p_record,
                                 const EstimateOptions& opts = {});

// Columns: x, y.  A leading comment line carries the settings and seed.
void write_record_csv(const MeasurementRecord& record, std::ostream& os);

}  // namespace epr
