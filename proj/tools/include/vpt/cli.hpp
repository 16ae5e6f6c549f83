#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vpt/params.hpp"
#include "vpt/variational.hpp"

namespace vpt::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2 };

struct RunConfig {
  std::string subcommand;
  OscillatorParams params;
  int order = 2;
  std::vector<double> couplings;  // empty means {g = 1/2}
  std::optional<double> x_max;    // default 8 oscillator lengths
  int points = 2001;
  variational::SolverPolicy policy;
  bool perturbative = false;  // psi: emit the series instead of the variational curve
  bool verbose = false;       // diagrams: derivation log
  std::string out;            // empty: stdout, or <subcommand>.csv under VPT_OUT_DIR

  void validate() const;
  std::vector<double> grid() const;
};

/// Parses the arguments (program name excluded) and runs the subcommand. Diagnostics go to `err`; results go to
/// the configured file, or to `out` when no file is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace vpt::cli
