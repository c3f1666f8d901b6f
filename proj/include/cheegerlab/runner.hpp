#pragma once

#include "cheegerlab/report.hpp"
#include "cheegerlab/scenario.hpp"

namespace cheegerlab {

/// CLI run configuration; flags are these field names in kebab-case.
struct RunConfig {
  std::string scenario;
  std::string command;  // list | validate | deform | sweep | oneill | theoremB
  std::vector<double> eps_grid = {0.1, 0.5, 1.0, 4.0, 10.0, 100.0};
  int n_samples = 64;
  std::uint64_t seed = 7;
  int fd_order = 4;
  double fd_step = 1e-4;
  std::string format = "json";  // json | csv
  std::string output;           // empty: stdout

  DerivativeScheme scheme() const { return DerivativeScheme{fd_order, fd_step}; }
};

struct RunResult {
  int exit_code = 0;
  Json report;

  std::string rendered(const std::string& format) const;
};

/// Executes the command and builds the report. Exit code 0 iff every gated
/// row passes (or the scenario is a declared negative control failing at the
/// intended check); 1 when a gated check fails; 2 on errors, with a
/// machine-readable error record in the report.
RunResult run(const RunConfig& cfg);

/// Writes result to cfg.output (or stdout when empty), newline-terminated.
int run_and_emit(const RunConfig& cfg);

}  // namespace cheegerlab
