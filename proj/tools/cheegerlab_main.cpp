// Command-line front end: machine-readable reports for validation,
// deformation sweeps, and curvature decompositions on the built-in
// scenarios.

#include <CLI11.hpp>

#include "cheegerlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "cheegerlab: numerical laboratory for Cheeger-type metric deformations "
      "induced by groupoid actions"};
  app.require_subcommand(1);

  cheegerlab::RunConfig cfg;

  auto add_common = [&cfg](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("scenario", cfg.scenario, "scenario name")->required();
    cmd->add_option("--eps-grid", cfg.eps_grid,
                    "ascending positive deformation parameters")
        ->expected(-1);
    cmd->add_option("--n-samples", cfg.n_samples, "sample count (>= 1)");
    cmd->add_option("--seed", cfg.seed, "sampler seed");
    cmd->add_option("--fd-order", cfg.fd_order, "stencil order (2 or 4)")
        ->check(CLI::IsMember({2, 4}));
    cmd->add_option("--fd-step", cfg.fd_step, "relative FD step");
    cmd->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", cfg.output, "output path (default: stdout)");
  };

  add_common(app.add_subcommand("list", "list the scenario registry"), false);
  add_common(app.add_subcommand("validate",
                                "axiom and metric validator battery"),
             true);
  add_common(app.add_subcommand("deform",
                                "deformed-metric matrices at sample points"),
             true);
  add_common(app.add_subcommand(
                 "sweep", "collapse table and submersion contracts over the "
                          "epsilon grid"),
             true);
  add_common(app.add_subcommand("oneill",
                                "submersion curvature identity residuals"),
             true);
  add_common(app.add_subcommand(
                 "theoremB",
                 "term-by-term curvature decomposition of the deformation"),
             true);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  return cheegerlab::run_and_emit(cfg);
}
