#include "epr/lhv.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "epr/format.hpp"
#include "epr/random.hpp"

namespace epr {

double ResponseModel::width(double angle) const {
  return std::abs(std::cos(angle)) * sigma_x + std::abs(std::sin(angle)) * sigma_p;
}

LhvEnsemble wigner_sample(const GaussianState& state, int n_samples,
                          std::uint64_t seed) {
  if (n_samples < 1) throw Error("ensemble needs at least one sample");
  validate(state);
  Eigen::LLT<Eigen::Matrix4d> llt(state.cov);
  if (llt.info() != Eigen::Success)
    throw PhysicalityError("covariance is not positive definite");
  const Eigen::Matrix4d l = llt.matrixL();
  Rng rng(seed);
  LhvEnsemble ensemble;
  ensemble.source = "wigner";
  ensemble.samples.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    Eigen::Vector4d z(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    const Eigen::Vector4d v = state.mean + l * z;
    ensemble.samples.push_back({v[0], v[1], v[2], v[3]});
  }
  return ensemble;
}

MeasurementRecord lhv_record(const LhvEnsemble& ensemble, double theta, double phi,
                             const ResponseModel& response,
                             std::uint64_t noise_seed) {
  MeasurementRecord record;
  record.theta = theta;
  record.phi = phi;
  record.seed = noise_seed;
  record.outcomes.reserve(ensemble.samples.size());
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  if (response.dispersion_free()) {
    for (const auto& s : ensemble.samples)
      record.outcomes.emplace_back(ct * s.x_a + st * s.p_a, cp * s.x_b + sp * s.p_b);
    return record;
  }
  Rng rng(noise_seed);
  const double wa = response.width(theta), wb = response.width(phi);
  for (const auto& s : ensemble.samples)
    record.outcomes.emplace_back(ct * s.x_a + st * s.p_a + wa * rng.normal(),
                                 cp * s.x_b + sp * s.p_b + wb * rng.normal());
  return record;
}

JointQuadratureDistribution lhv_predicts(const LhvEnsemble& ensemble, double theta,
                                         double phi, const QuadratureGrid& grid_a,
                                         const QuadratureGrid& grid_b,
                                         const ResponseModel& response,
                                         std::uint64_t noise_seed) {
  const MeasurementRecord record =
      lhv_record(ensemble, theta, phi, response, noise_seed);
  JointQuadratureDistribution out;
  out.grid_a = grid_a;
  out.grid_b = grid_b;
  out.theta = theta;
  out.phi = phi;
  out.probs = Eigen::MatrixXd::Zero(grid_a.n_points, grid_b.n_points);
  const double share = 1.0 / record.outcomes.size();
  double inside = 0.0;
  for (const auto& [x, y] : record.outcomes) {
    const int i = static_cast<int>(std::floor((x - grid_a.lo) / grid_a.width()));
    const int j = static_cast<int>(std::floor((y - grid_b.lo) / grid_b.width()));
    if (i < 0 || i >= grid_a.n_points || j < 0 || j >= grid_b.n_points) continue;
    out.probs(i, j) += share;
    inside += share;
  }
  // A histogram is the model's own prediction: clipped mass is reported, not
  // an error, unless the grids miss most of it.
  out.captured_mass = inside;
  if (inside < 0.5)
    throw GridError("grids miss most of the model's outcomes", 1.0 - inside);
  out.probs /= inside;
  return out;
}

ProvisoReport check_uncertainty_proviso(const LhvEnsemble& ensemble,
                                        const ResponseModel& response,
                                        const UncertaintyBounds& bounds) {
  ProvisoReport report;
  report.n_samples = ensemble.samples.size();
  report.product_a = response.sigma_x * response.sigma_p;
  report.product_b = report.product_a;
  const bool ok = report.product_a >= bounds.c && report.product_b >= bounds.d;
  // The response widths are shared by every lambda, so the fraction is 0/1.
  report.fraction_satisfying = ok ? 1.0 : 0.0;
  report.satisfied = ok;
  return report;
}

std::vector<MomentCheckEntry> lhv_moment_check(const MeasurementRecord& x_record,
                                               const MeasurementRecord& p_record,
                                               const TwoModeState& source,
                                               double n_se) {
  const Moments4 m = two_mode_moments(source);
  auto variance = [](const std::vector<std::pair<double, double>>& outcomes,
                     bool first) {
    double s = 0.0, ss = 0.0;
    for (const auto& [a, b] : outcomes) {
      const double v = first ? a : b;
      s += v;
      ss += v * v;
    }
    const double n = static_cast<double>(outcomes.size());
    const double mean = s / n;
    return ss / n - mean * mean;
  };
  auto entry = [&](const char* label, double sample, double quantum,
                   std::size_t n) {
    MomentCheckEntry e;
    e.label = label;
    e.sample = sample;
    e.quantum = quantum;
    // Standard error of a sample variance under approximate normality.
    e.se = sample * std::sqrt(2.0 / std::max<double>(double(n) - 1.0, 1.0));
    e.consistent = std::abs(sample - quantum) <= n_se * e.se;
    return e;
  };
  std::vector<MomentCheckEntry> checks;
  checks.push_back(entry("var_x_a", variance(x_record.outcomes, true), m.cov(0, 0),
                         x_record.outcomes.size()));
  checks.push_back(entry("var_x_b", variance(x_record.outcomes, false), m.cov(2, 2),
                         x_record.outcomes.size()));
  checks.push_back(entry("var_p_a", variance(p_record.outcomes, true), m.cov(1, 1),
                         p_record.outcomes.size()));
  checks.push_back(entry("var_p_b", variance(p_record.outcomes, false), m.cov(3, 3),
                         p_record.outcomes.size()));
  return checks;
}

double total_variation(const JointQuadratureDistribution& p,
                       const JointQuadratureDistribution& q, int block) {
  auto same_grid = [](const QuadratureGrid& a, const QuadratureGrid& b) {
    return a.n_points == b.n_points && std::abs(a.lo - b.lo) < 1e-12 &&
           std::abs(a.hi - b.hi) < 1e-12;
  };
  if (!same_grid(p.grid_a, q.grid_a) || !same_grid(p.grid_b, q.grid_b))
    throw GridError("total variation needs identical grids");
  if (block < 1 || p.grid_a.n_points % block != 0 || p.grid_b.n_points % block != 0)
    throw GridError("block size must divide the grid sizes");
  const int na = p.grid_a.n_points / block;
  const int nb = p.grid_b.n_points / block;
  double tv = 0.0;
  for (int bi = 0; bi < na; ++bi)
    for (int bj = 0; bj < nb; ++bj) {
      const double dp = p.probs.block(bi * block, bj * block, block, block).sum();
      const double dq = q.probs.block(bi * block, bj * block, block, block).sum();
      tv += std::abs(dp - dq);
    }
  return 0.5 * tv;
}

void write_ensemble_csv(const LhvEnsemble& ensemble, std::ostream& os) {
  os << "x_a,p_a,x_b,p_b\n";
  for (const auto& s : ensemble.samples)
    os << format_sig(s.x_a) << ',' << format_sig(s.p_a) << ','
       << format_sig(s.x_b) << ',' << format_sig(s.p_b) << '\n';
}

}  // namespace epr
