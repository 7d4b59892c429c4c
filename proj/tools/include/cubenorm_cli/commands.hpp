#pragma once

#include "cubenorm/quartic.hpp"
#include "cubenorm/suites.hpp"
#include "cubenorm_cli/report_io.hpp"

#include <iosfwd>
#include <string>

namespace cubenorm::cli {

enum ExitCode : int { kOk = 0, kHardFailure = 1, kUsage = 2, kResourceCap = 3 };

struct GlobalOptions {
  std::string format = "json";
  std::uint64_t seed = 0;
  int starts = 32;
  int iters = 10000;
  double tol = 1e-12;
  int dense_cap = kDefaultDenseCap;
  int exact_limit = 20;
  int threads = 1;

  OptimizerConfig optimizer() const;
  /// Everything that can change output bytes; threads is deliberately absent.
  Json echo() const;
};

struct CommandOutput {
  ReportDocument doc;
  std::string csv;
  int exit_code = kOk;
};

CommandOutput cmd_analyze(const SupportSet& a, const GlobalOptions& opt);
CommandOutput cmd_sphere_table(int n, int k, bool exact, int t_begin, int t_end, const GlobalOptions& opt);
CommandOutput cmd_scan(int n_max, const GlobalOptions& opt);
CommandOutput cmd_verify(Suite suite, const GlobalOptions& opt);

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubenorm::cli
