#include "epr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "epr/format.hpp"
#include "epr/random.hpp"

namespace epr {
namespace {

struct PairStats {
  double mean_x = 0.0, mean_y = 0.0;
  double var_x = 0.0, var_y = 0.0, cov = 0.0;
};

using IndexList = std::vector<std::uint32_t>;

PairStats pair_stats(const std::vector<std::pair<double, double>>& outcomes,
                     const IndexList& idx) {
  PairStats s;
  const double n = static_cast<double>(idx.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (auto i : idx) {
    const auto& [x, y] = outcomes[i];
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  s.mean_x = sx / n;
  s.mean_y = sy / n;
  s.var_x = sxx / n - s.mean_x * s.mean_x;
  s.var_y = syy / n - s.mean_y * s.mean_y;
  s.cov = sxy / n - s.mean_x * s.mean_y;
  return s;
}

double residual_variance(const PairStats& s, double g) {
  return s.var_x - 2.0 * g * s.cov + g * g * s.var_y;
}

double empirical_gain(const PairStats& s) {
  return s.var_y > 0.0 ? s.cov / s.var_y : 0.0;
}

struct BinnedConditional {
  double variance = 0.0;
  int occupied = 0;
};

BinnedConditional binned_conditional(
    const std::vector<std::pair<double, double>>& outcomes, const IndexList& idx,
    int bins) {
  const PairStats s = pair_stats(outcomes, idx);
  const double sd = std::sqrt(std::max(s.var_y, 1e-300));
  const double lo = s.mean_y - 6.0 * sd;
  const double width = 12.0 * sd / bins;
  std::vector<double> count(bins, 0.0), sum(bins, 0.0), sum_sq(bins, 0.0);
  for (auto i : idx) {
    const auto& [x, y] = outcomes[i];
    const int j = static_cast<int>(std::floor((y - lo) / width));
    if (j < 0 || j >= bins) continue;
    count[j] += 1.0;
    sum[j] += x;
    sum_sq[j] += x * x;
  }
  BinnedConditional out;
  double kept = 0.0, acc = 0.0;
  for (int j = 0; j < bins; ++j) {
    if (count[j] < 2.0) continue;
    ++out.occupied;
    kept += count[j];
    const double mu = sum[j] / count[j];
    // Per-bin Bessel correction: the pooled population variance is biased
    // low by O(occupied/kept), which the bootstrap cannot see and which is
    // enough to push a boundary state past the 3 SE rule.
    acc += count[j] * (sum_sq[j] - count[j] * mu * mu) / (count[j] - 1.0);
  }
  out.variance = kept > 0.0 ? acc / kept : 0.0;
  return out;
}

// Everything estimate_criteria reports, evaluated on one pair of index
// subsets; used as-is by the bootstrap.
struct LhsVector {
  double reid_conditional = 0.0;
  double reid_linear = 0.0;
  double linear_product = 0.0;
  double any_g = 0.0;
  double tms = 0.0;
  double duan = 0.0;
};

struct Gains {
  double g = 0.0;      // x inference gain
  double h = 0.0;      // p inference gain
  double h_sign = 0.0; // sign-restricted p gain for two_mode_squeezing
};

LhsVector evaluate_lhs(const MeasurementRecord& x_rec, const MeasurementRecord& p_rec,
                       const IndexList& ix, const IndexList& ip,
                       const EstimateOptions& opts, Gains* gains_out) {
  const PairStats sx = pair_stats(x_rec.outcomes, ix);
  const PairStats sp = pair_stats(p_rec.outcomes, ip);
  Gains gains;
  gains.g = opts.g ? *opts.g : empirical_gain(sx);
  gains.h = opts.h ? *opts.h : empirical_gain(sp);
  gains.h_sign = residual_variance(sp, -1.0) <= residual_variance(sp, 1.0) ? -1.0 : 1.0;
  if (gains_out) *gains_out = gains;

  LhsVector lhs;
  const double vx = residual_variance(sx, gains.g);
  const double vp = residual_variance(sp, gains.h);
  lhs.reid_linear = std::sqrt(std::max(vx, 0.0)) * std::sqrt(std::max(vp, 0.0));
  lhs.linear_product = vx * vp;
  lhs.any_g = residual_variance(sx, gains.g) *
              residual_variance(sp, -gains.g);
  lhs.tms = std::max(residual_variance(sx, 1.0), residual_variance(sp, gains.h_sign));
  lhs.duan = residual_variance(sx, 1.0) + residual_variance(sp, -1.0);

  const BinnedConditional bx = binned_conditional(x_rec.outcomes, ix, opts.conditional_bins);
  const BinnedConditional bp = binned_conditional(p_rec.outcomes, ip, opts.conditional_bins);
  lhs.reid_conditional =
      std::sqrt(std::max(bx.variance, 0.0)) * std::sqrt(std::max(bp.variance, 0.0));
  return lhs;
}

IndexList identity_index(std::size_t n) {
  IndexList idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  return idx;
}

IndexList resample_index(std::size_t n, Rng& rng) {
  IndexList idx(n);
  for (auto& v : idx)
    v = static_cast<std::uint32_t>(rng.integer(n));
  return idx;
}

}  // namespace

MeasurementRecord run_experiment(const TwoModeState& state, double theta,
                                 double phi, int n_shots, std::uint64_t seed,
                                 const GridSpec& spec) {
  if (n_shots < 1) throw Error("experiment needs at least one shot");
  MeasurementRecord record;
  record.theta = theta;
  record.phi = phi;
  record.seed = seed;
  record.outcomes.reserve(n_shots);
  Rng rng(seed);

  if (std::holds_alternative<GaussianState>(state)) {
    // Exact sampling from the projected bivariate normal.
    const auto& g = std::get<GaussianState>(state);
    Eigen::Vector4d ca(std::cos(theta), std::sin(theta), 0.0, 0.0);
    Eigen::Vector4d cb(0.0, 0.0, std::cos(phi), std::sin(phi));
    const double mx = ca.dot(g.mean), my = cb.dot(g.mean);
    const double vxx = ca.dot(g.cov * ca), vyy = cb.dot(g.cov * cb);
    const double vxy = ca.dot(g.cov * cb);
    if (vxx <= 0.0 || vyy - vxy * vxy / vxx <= 0.0)
      throw GridError("projected covariance is degenerate");
    const double l00 = std::sqrt(vxx);
    const double l10 = vxy / l00;
    const double l11 = std::sqrt(vyy - l10 * l10);
    for (int k = 0; k < n_shots; ++k) {
      const double z0 = rng.normal(), z1 = rng.normal();
      record.outcomes.emplace_back(mx + l00 * z0, my + l10 * z0 + l11 * z1);
    }
    return record;
  }

  // Inverse-transform sampling on the gridded joint, with uniform jitter
  // inside the chosen bin so outcomes are not lattice-valued.
  const JointQuadratureDistribution joint = joint_distribution(state, theta, phi, spec);
  const int na = joint.grid_a.n_points, nb = joint.grid_b.n_points;
  std::vector<double> cdf(static_cast<std::size_t>(na) * nb);
  double acc = 0.0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      acc += joint.probs(i, j);
      cdf[static_cast<std::size_t>(i) * nb + j] = acc;
    }
  const double wa = joint.grid_a.width(), wb = joint.grid_b.width();
  for (int k = 0; k < n_shots; ++k) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto flat = static_cast<int>(it - cdf.begin());
    const int i = flat / nb, j = flat % nb;
    const double x = joint.grid_a.center(i) + (rng.uniform() - 0.5) * wa;
    const double y = joint.grid_b.center(j) + (rng.uniform() - 0.5) * wb;
    record.outcomes.emplace_back(x, y);
  }
  return record;
}

EstimateResult estimate_criteria(const MeasurementRecord& x_record,
                                 const MeasurementRecord& p_record,
                                 const EstimateOptions& opts) {
  if (x_record.outcomes.empty() || p_record.outcomes.empty())
    throw Error("cannot estimate criteria from empty records");
  const IndexList ix = identity_index(x_record.outcomes.size());
  const IndexList ip = identity_index(p_record.outcomes.size());
  Gains gains;
  const LhsVector point = evaluate_lhs(x_record, p_record, ix, ip, opts, &gains);
  const BinnedConditional bx =
      binned_conditional(x_record.outcomes, ix, opts.conditional_bins);
  const BinnedConditional bp =
      binned_conditional(p_record.outcomes, ip, opts.conditional_bins);

  // Bootstrap: resample both records independently and rerun the whole
  // estimator, empirical gains included.
  Rng rng(opts.bootstrap_seed);
  std::vector<LhsVector> resampled;
  resampled.reserve(opts.bootstrap_resamples);
  for (int b = 0; b < opts.bootstrap_resamples; ++b) {
    const IndexList rx = resample_index(ix.size(), rng);
    const IndexList rp = resample_index(ip.size(), rng);
    resampled.push_back(evaluate_lhs(x_record, p_record, rx, rp, opts, nullptr));
  }
  auto se_of = [&](double LhsVector::*member) {
    double mean = 0.0;
    for (const auto& r : resampled) mean += r.*member;
    mean /= resampled.size();
    double var = 0.0;
    for (const auto& r : resampled) {
      const double d = r.*member - mean;
      var += d * d;
    }
    return std::sqrt(var / std::max<std::size_t>(resampled.size() - 1, 1));
  };

  const double shots_x = static_cast<double>(ix.size());
  EstimateResult result;
  auto push = [&](CriterionName name, InferenceMethod method, double lhs,
                  double bound, double se,
                  std::map<std::string, double> params) {
    EstimatedCriterion est;
    est.report.name = name;
    est.report.method = method;
    est.report.lhs = lhs;
    est.report.bound = bound;
    est.report.params = std::move(params);
    est.report.params["shots"] = shots_x;
    est.se = se;
    est.report.violated = lhs < bound - 3.0 * se;
    est.report.note = "sampled estimate; violation tested at 3 standard errors";
    result.criteria.push_back(std::move(est));
  };

  const double c = opts.bounds.c, d = opts.bounds.d;
  const bool conditional_ok = bx.occupied >= opts.min_occupied_bins &&
                              bp.occupied >= opts.min_occupied_bins;
  if (conditional_ok) {
    push(CriterionName::reid_product, InferenceMethod::conditional,
         point.reid_conditional, c, se_of(&LhsVector::reid_conditional),
         {{"bins", double(opts.conditional_bins)}});
  } else {
    std::ostringstream msg;
    msg << "conditional estimate suppressed: only " << std::min(bx.occupied, bp.occupied)
        << " bins hold 2+ shots (need " << opts.min_occupied_bins << ")";
    result.warnings.push_back(msg.str());
  }
  push(CriterionName::reid_product, InferenceMethod::linear, point.reid_linear,
       c, se_of(&LhsVector::reid_linear), {{"g_x", gains.g}, {"g_p", gains.h}});
  push(CriterionName::linear_product, InferenceMethod::linear, point.linear_product,
       c * c + gains.g * gains.g * gains.h * gains.h * d * d,
       se_of(&LhsVector::linear_product), {{"g", gains.g}, {"h", gains.h}});
  push(CriterionName::any_g_product, InferenceMethod::linear, point.any_g,
       c * c * (1.0 + std::pow(gains.g, 4)), se_of(&LhsVector::any_g),
       {{"g", gains.g}});
  push(CriterionName::two_mode_squeezing, InferenceMethod::linear, point.tms,
       2.0 * c * c, se_of(&LhsVector::tms), {{"g", 1.0}, {"h", gains.h_sign}});
  push(CriterionName::duan_sum, InferenceMethod::linear, point.duan,
       2.0 * (c + d), se_of(&LhsVector::duan), {});
  return result;
}

void write_record_csv(const MeasurementRecord& record, std::ostream& os) {
  os << "# theta=" << format_sig(record.theta) << " phi=" << format_sig(record.phi)
     << " seed=" << record.seed << " shots=" << record.outcomes.size() << '\n';
  os << "x,y\n";
  for (const auto& [x, y] : record.outcomes)
    os << format_sig(x) << ',' << format_sig(y) << '\n';
}

}  // namespace epr
