#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace epr {

// Parsed command line for the eprcli tool.  Kept as plain data so every
// command can be driven from tests without a process boundary.
struct RunConfig {
  std::string command;        // describe | criteria | sweep | experiment | lhv
  std::string state_path;
  std::string out_path;       // payload file; empty writes to stdout
  std::string record_prefix;  // experiment: also dump raw records
  std::string method = "conditional";
  std::string format = "table";
  std::string param = "r";    // sweep parameter
  std::string range;          // sweep values, "start:stop:step"
  std::string gains;          // gain sweep, "start:stop:step"
  int grid_points = 256;
  double grid_sigmas = 6.0;
  int shots = 100000;
  std::uint64_t seed = 0;
  double smear = 0.0;         // lhv response width; 0 = dispersion-free
  double c_bound = 1.0;
  double d_bound = 1.0;
  int cutoff = 0;             // describe: flattening cutoff; 0 picks one
};

// Exit codes: 0 = ran, no violation flagged; 3 = at least one criterion
// violated; 1 = any error (bad spec, unphysical state, unusable grid).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace epr
