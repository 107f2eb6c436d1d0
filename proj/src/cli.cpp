#include "epr/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "epr/criteria.hpp"
#include "epr/format.hpp"
#include "epr/lhv.hpp"
#include "epr/report_io.hpp"
#include "epr/state_spec.hpp"

namespace epr {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 3;

std::vector<double> parse_range(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':')
    throw Error("range '" + text + "' is not start:stop:step");
  if (!(step > 0.0)) throw Error("range step must be positive");
  if (stop < start) throw Error("range stop is below start");
  std::vector<double> values;
  for (double v = start; v <= stop + 0.5 * step; v += step)
    values.push_back(v);
  return values;
}

// Routes the machine-readable payload to --out or to stdout.
class PayloadTarget {
 public:
  PayloadTarget(const std::string& path, std::ostream& fallback)
      : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file '" + path + "'");
      os_ = &file_;
    } else {
      os_ = &fallback;
    }
  }
  std::ostream& stream() { return *os_; }
  void announce(std::ostream& out) const {
    if (!path_.empty()) out << "wrote " << path_ << '\n';
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void print_convention(std::ostream& out) {
  out << "convention: x = a + a^dag, p = -i(a - a^dag), vacuum variance 1; "
         "uncertainty bounds C, D default to 1\n";
}

InferenceMethod method_from(const RunConfig& cfg) {
  if (cfg.method == "conditional") return InferenceMethod::conditional;
  if (cfg.method == "linear") return InferenceMethod::linear;
  throw Error("unknown method '" + cfg.method + "' (conditional or linear)");
}

OutputFormat format_from(const RunConfig& cfg) {
  if (cfg.format == "table") return OutputFormat::table;
  if (cfg.format == "csv") return OutputFormat::csv;
  throw Error("unknown format '" + cfg.format + "' (table or csv)");
}

CriteriaOptions options_from(const RunConfig& cfg) {
  CriteriaOptions opts;
  opts.bounds.c = cfg.c_bound;
  opts.bounds.d = cfg.d_bound;
  opts.grid.n_points = cfg.grid_points;
  opts.grid.sigmas = cfg.grid_sigmas;
  return opts;
}

int flattening_cutoff(const SeparableMixture& mix, int requested) {
  if (requested > 0) return requested;
  double n_max = 0.0;
  int dim_max = 1;
  for (const auto& term : mix.terms) {
    for (const auto* s : {&term.state_a, &term.state_b}) {
      const SingleModeGaussian m = single_mode_moments(*s);
      const double n_bar =
          std::max(0.0, 0.25 * (m.cov.trace() + m.mean.squaredNorm()) - 0.5);
      n_max = std::max(n_max, n_bar);
      if (std::holds_alternative<SingleModeFock>(*s))
        dim_max = std::max(dim_max, std::get<SingleModeFock>(*s).dim);
    }
  }
  const int guess =
      static_cast<int>(std::ceil(4.0 * n_max + 8.0 * std::sqrt(n_max + 0.25) + 10.0));
  return std::max(std::min(guess, 48), dim_max - 1);
}

int cmd_describe(const RunConfig& cfg, std::ostream& out) {
  const ParsedState ps = load_state_spec(cfg.state_path);
  print_convention(out);
  out << "kind: " << ps.kind << '\n';
  if (ps.tmsv_r) out << "squeezing r: " << format_sig(*ps.tmsv_r) << '\n';

  const Moments4 m = two_mode_moments(ps.state);
  out << "mean (x_a, p_a, x_b, p_b): ";
  for (int i = 0; i < 4; ++i) out << format_sig(m.mean[i]) << (i < 3 ? ' ' : '\n');
  out << "covariance:\n";
  for (int i = 0; i < 4; ++i) {
    out << "  ";
    for (int j = 0; j < 4; ++j)
      out << format_sig(m.cov(i, j)) << (j < 3 ? ' ' : '\n');
  }
  out << "marginal uncertainty products: A "
      << format_sig(std::sqrt(m.cov(0, 0) * m.cov(1, 1))) << ", B "
      << format_sig(std::sqrt(m.cov(2, 2) * m.cov(3, 3))) << '\n';

  double ppt = 0.0;
  if (std::holds_alternative<GaussianState>(ps.state)) {
    const auto& g = std::get<GaussianState>(ps.state);
    out << "physicality: min eigenvalue of cov + i*Omega = "
        << format_sig(physicality_min_eigenvalue(g)) << '\n';
    ppt = ppt_min_eigenvalue(g);
    out << "partial transpose: min eigenvalue " << format_sig(ppt) << '\n';
  } else {
    FockDensityMatrix rho;
    if (std::holds_alternative<FockDensityMatrix>(ps.state)) {
      rho = std::get<FockDensityMatrix>(ps.state);
    } else {
      const auto& mix = std::get<SeparableMixture>(ps.state);
      const int cutoff = flattening_cutoff(mix, cfg.cutoff);
      out << "flattening cutoff: " << cutoff << '\n';
      rho = mixture_to_density(mix, cutoff, cutoff);
    }
    out << "dimensions: " << rho.dim_a << " x " << rho.dim_b << '\n';
    out << "physicality: hermitian, unit trace, min eigenvalue "
        << format_sig(min_eigenvalue(rho.entries)) << '\n';
    ppt = min_eigenvalue(partial_transpose_b(rho).entries);
    out << "partial transpose: min eigenvalue " << format_sig(ppt) << '\n';
  }
  out << (ppt < -1e-9 ? "negative partial transpose: entangled\n"
                      : "partial transpose positive: consistent with separability\n");
  return kExitOk;
}

int cmd_criteria(const RunConfig& cfg, std::ostream& out) {
  const ParsedState ps = load_state_spec(cfg.state_path);
  const CriteriaOptions opts = options_from(cfg);
  const InferenceMethod method = method_from(cfg);
  const OutputFormat format = format_from(cfg);
  std::vector<double> gains;
  if (!cfg.gains.empty()) gains = parse_range(cfg.gains);

  print_convention(out);
  out << "state: " << ps.kind << " (" << cfg.state_path << ")\n";
  const auto reports = evaluate_all(ps.state, gains, method, opts);

  PayloadTarget target(cfg.out_path, out);
  if (format == OutputFormat::csv)
    write_reports_csv(reports, target.stream());
  else
    write_reports_table(reports, target.stream());
  target.announce(out);

  for (const auto& r : reports)
    if (r.violated) return kExitViolation;
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.range.empty()) throw Error("sweep needs --range start:stop:step");
  const std::vector<double> values = parse_range(cfg.range);
  const CriteriaOptions opts = options_from(cfg);
  const OutputFormat format = format_from(cfg);
  std::vector<SweepRow> rows;

  if (cfg.param == "r") {
    const InferenceMethod method = method_from(cfg);
    for (double r : values) {
      const TwoModeState state = make_gaussian_tmsv(r);
      rows.push_back({r, reid_epr_criterion(state, method, opts)});
      const double gx = optimal_gain(state, x_pair());
      const double hp = optimal_gain(state, p_pair());
      rows.push_back({r, linear_product_criterion(state, gx, hp, opts)});
      rows.push_back({r, any_g_product_criterion(state, gx, opts)});
      rows.push_back({r, two_mode_squeezing_criterion(state, opts)});
      rows.push_back({r, duan_sum_criterion(state, opts)});
    }
  } else if (cfg.param == "g") {
    if (cfg.state_path.empty())
      throw Error("sweep over g needs --state");
    const ParsedState ps = load_state_spec(cfg.state_path);
    for (double g : values) {
      rows.push_back({g, linear_product_criterion(ps.state, g, -g, opts)});
      rows.push_back({g, any_g_product_criterion(ps.state, g, opts)});
    }
  } else {
    throw Error("unknown sweep parameter '" + cfg.param + "' (r or g)");
  }

  print_convention(out);
  PayloadTarget target(cfg.out_path, out);
  if (format == OutputFormat::csv)
    write_sweep_csv(cfg.param, rows, target.stream());
  else
    write_sweep_table(cfg.param, rows, target.stream());
  target.announce(out);

  for (const auto& row : rows)
    if (row.report.violated) return kExitViolation;
  return kExitOk;
}

int cmd_experiment(const RunConfig& cfg, std::ostream& out) {
  const ParsedState ps = load_state_spec(cfg.state_path);
  const OutputFormat format = format_from(cfg);
  GridSpec grid{cfg.grid_points, cfg.grid_sigmas};
  const double half_pi = std::numbers::pi / 2.0;
  const MeasurementRecord x_rec =
      run_experiment(ps.state, 0.0, 0.0, cfg.shots, cfg.seed, grid);
  const MeasurementRecord p_rec =
      run_experiment(ps.state, half_pi, half_pi, cfg.shots, cfg.seed + 1, grid);

  EstimateOptions eopts;
  eopts.bounds.c = cfg.c_bound;
  eopts.bounds.d = cfg.d_bound;
  eopts.conditional_bins = cfg.grid_points;
  const EstimateResult res = estimate_criteria(x_rec, p_rec, eopts);

  print_convention(out);
  out << "state: " << ps.kind << ", shots: " << cfg.shots
      << ", seed: " << cfg.seed << '\n';
  for (const auto& w : res.warnings) out << "warning: " << w << '\n';

  std::vector<CriterionReport> reports;
  std::vector<double> ses;
  for (const auto& est : res.criteria) {
    reports.push_back(est.report);
    ses.push_back(est.se);
  }
  PayloadTarget target(cfg.out_path, out);
  if (format == OutputFormat::csv)
    write_reports_csv(reports, target.stream(), &ses);
  else
    write_reports_table(reports, target.stream(), &ses);
  target.announce(out);

  if (!cfg.record_prefix.empty()) {
    for (const auto* rec : {&x_rec, &p_rec}) {
      const std::string path = cfg.record_prefix +
                               (rec == &x_rec ? "_x.csv" : "_p.csv");
      std::ofstream f(path);
      if (!f) throw Error("cannot open record file '" + path + "'");
      write_record_csv(*rec, f);
      out << "wrote " << path << '\n';
    }
  }

  for (const auto& r : reports)
    if (r.violated) return kExitViolation;
  return kExitOk;
}

int cmd_lhv(const RunConfig& cfg, std::ostream& out) {
  const ParsedState ps = load_state_spec(cfg.state_path);
  GaussianState gauss;
  if (ps.tmsv_r) {
    gauss = make_gaussian_tmsv(*ps.tmsv_r);
  } else if (std::holds_alternative<GaussianState>(ps.state)) {
    gauss = std::get<GaussianState>(ps.state);
  } else {
    throw Error(
        "the local model samples a covariance representation; use a tmsv or "
        "gaussian state");
  }
  const OutputFormat format = format_from(cfg);
  const double half_pi = std::numbers::pi / 2.0;

  const LhvEnsemble ensemble = wigner_sample(gauss, cfg.shots, cfg.seed);
  const ResponseModel response{cfg.smear, cfg.smear};
  const MeasurementRecord x_rec =
      lhv_record(ensemble, 0.0, 0.0, response, cfg.seed + 1);
  const MeasurementRecord p_rec =
      lhv_record(ensemble, half_pi, half_pi, response, cfg.seed + 2);

  print_convention(out);
  out << "local model: " << ensemble.samples.size()
      << " phase-space samples, response widths ("
      << format_sig(response.sigma_x) << ", " << format_sig(response.sigma_p)
      << ")\n";
  UncertaintyBounds bounds{cfg.c_bound, cfg.d_bound};
  const ProvisoReport proviso =
      check_uncertainty_proviso(ensemble, response, bounds);
  out << "uncertainty proviso: response dispersion product "
      << format_sig(proviso.product_a) << " vs bound " << format_sig(bounds.c)
      << " -> " << (proviso.satisfied ? "satisfied" : "NOT satisfied") << '\n';

  const TwoModeState source = gauss;
  bool moments_ok = true;
  for (const auto& check : lhv_moment_check(x_rec, p_rec, source)) {
    out << "marginal " << check.label << ": model " << format_sig(check.sample)
        << ", quantum " << format_sig(check.quantum)
        << (check.consistent ? "" : "  <- deviates") << '\n';
    moments_ok = moments_ok && check.consistent;
  }
  if (!moments_ok)
    out << "model marginals deviate from the quantum state: the smeared "
           "responses satisfy the proviso only by inflating variances\n";

  // Histogram-vs-quantum distance on 32x32 aggregated bins; finer bins only
  // measure sampling noise.
  if (cfg.grid_points % 32 == 0) {
    const int block = cfg.grid_points / 32;
    GridSpec grid{cfg.grid_points, cfg.grid_sigmas};
    for (int setting = 0; setting < 2; ++setting) {
      const double angle = setting == 0 ? 0.0 : half_pi;
      const JointQuadratureDistribution quantum =
          joint_distribution(source, angle, angle, grid);
      const JointQuadratureDistribution model =
          lhv_predicts(ensemble, angle, angle, quantum.grid_a, quantum.grid_b,
                       response, cfg.seed + 3 + setting);
      out << "total variation (" << (setting == 0 ? "x" : "p")
          << " settings, 32x32): "
          << format_sig(total_variation(quantum, model, block)) << '\n';
    }
  }

  EstimateOptions eopts;
  eopts.bounds = bounds;
  eopts.conditional_bins = cfg.grid_points;
  const EstimateResult res = estimate_criteria(x_rec, p_rec, eopts);
  for (const auto& w : res.warnings) out << "warning: " << w << '\n';
  std::vector<CriterionReport> reports;
  std::vector<double> ses;
  for (const auto& est : res.criteria) {
    reports.push_back(est.report);
    ses.push_back(est.se);
  }
  if (format == OutputFormat::csv)
    write_reports_csv(reports, out, &ses);
  else
    write_reports_table(reports, out, &ses);

  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) throw Error("cannot open output file '" + cfg.out_path + "'");
    write_ensemble_csv(ensemble, f);
    out << "wrote " << cfg.out_path << '\n';
  }

  for (const auto& r : reports)
    if (r.violated) return kExitViolation;
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.grid_points < 16) throw Error("grid needs at least 16 points");
    if (cfg.shots < 1) throw Error("shots must be at least 1");
    if (cfg.command == "describe") return cmd_describe(cfg, out);
    if (cfg.command == "criteria") return cmd_criteria(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "experiment") return cmd_experiment(cfg, out);
    if (cfg.command == "lhv") return cmd_lhv(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace epr
