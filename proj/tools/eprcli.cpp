// Command line front end: evaluates quadrature-correlation criteria on
// two-mode states, simulates measurement runs, and stress-tests local
// realistic models against them.

#include <iostream>

#include <CLI11.hpp>

#include "epr/cli.hpp"

int main(int argc, char** argv) {
  epr::RunConfig cfg;
  CLI::App app{
      "Inference-variance and separability criteria for two-mode "
      "continuous-variable states"};
  app.require_subcommand(1);

  auto add_state = [&cfg](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--state", cfg.state_path,
                                "state spec file (JSON)");
    if (required) opt->required();
  };
  auto add_grid = [&cfg](CLI::App* sub) {
    sub->add_option("--grid-points", cfg.grid_points, "grid resolution")
        ->check(CLI::Range(16, 65536));
    sub->add_option("--grid-sigmas", cfg.grid_sigmas,
                    "grid half-width in standard deviations")
        ->check(CLI::PositiveNumber);
  };
  auto add_output = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}));
    sub->add_option("--out", cfg.out_path, "write the payload to this file");
  };
  auto add_bounds = [&cfg](CLI::App* sub) {
    sub->add_option("--c-bound", cfg.c_bound, "uncertainty constant at A")
        ->check(CLI::PositiveNumber);
    sub->add_option("--d-bound", cfg.d_bound, "uncertainty constant at B")
        ->check(CLI::PositiveNumber);
  };

  auto* describe = app.add_subcommand("describe", "moments and physicality");
  add_state(describe, true);
  describe->add_option("--cutoff", cfg.cutoff,
                       "flattening cutoff for mixtures (0 = automatic)");

  auto* criteria = app.add_subcommand("criteria", "evaluate every criterion");
  add_state(criteria, true);
  criteria->add_option("--method", cfg.method, "conditional or linear")
      ->check(CLI::IsMember({"conditional", "linear"}));
  criteria->add_option("--gains", cfg.gains, "gain sweep start:stop:step");
  add_grid(criteria);
  add_output(criteria);
  add_bounds(criteria);

  auto* sweep = app.add_subcommand("sweep", "criterion curves over r or g");
  add_state(sweep, false);
  sweep->add_option("--param", cfg.param, "r or g")
      ->check(CLI::IsMember({"r", "g"}));
  sweep->add_option("--range", cfg.range, "start:stop:step")->required();
  sweep->add_option("--method", cfg.method, "conditional or linear")
      ->check(CLI::IsMember({"conditional", "linear"}));
  add_grid(sweep);
  add_output(sweep);
  add_bounds(sweep);

  auto* experiment =
      app.add_subcommand("experiment", "sample shots and estimate criteria");
  add_state(experiment, true);
  experiment->add_option("--shots", cfg.shots, "number of shots per setting")
      ->required()
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", cfg.seed, "sampling seed")->required();
  experiment->add_option("--record-out", cfg.record_prefix,
                         "also dump raw records to PREFIX_x.csv, PREFIX_p.csv");
  add_grid(experiment);
  add_output(experiment);
  add_bounds(experiment);

  auto* lhv = app.add_subcommand(
      "lhv", "local realistic model: sampling, proviso, reproduction");
  add_state(lhv, true);
  lhv->add_option("--shots", cfg.shots, "phase-space samples")
      ->required()
      ->check(CLI::PositiveNumber);
  lhv->add_option("--seed", cfg.seed, "sampling seed")->required();
  lhv->add_option("--smear", cfg.smear,
                  "per-station response width (0 = dispersion-free)")
      ->check(CLI::NonNegativeNumber);
  add_grid(lhv);
  add_output(lhv);
  add_bounds(lhv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return epr::run_command(cfg, std::cout, std::cerr);
}
