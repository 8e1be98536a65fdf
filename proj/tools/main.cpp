// Batch front end: configure a model + loop + gauge policy, run the holonomy
// pipeline, the spectrum sweep, the oracle comparison or the brute-force
// propagation, and emit JSON/CSV reports.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 tolerance failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holo/config.hpp"
#include "holo/report.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key=value config file");
  cmd->add_option("--set", args.overrides, "override a config key, e.g. --set K=4096")
      ->take_all();
  cmd->add_option("--out", args.out, "output path (default: stdout)");
  cmd->add_flag("--quiet", args.quiet, "suppress progress lines on stderr");
}

int dispatch(const CommonArgs& args, int (*runner)(const holo::cli::RunConfig&, bool)) {
  std::string out_path = args.out;
  try {
    holo::cli::RunConfig cfg = holo::cli::parse_config(args.config_path, args.overrides);
    if (!args.out.empty()) cfg.out = args.out;
    out_path = cfg.out;
    return runner(cfg, args.quiet);
  } catch (const holo::Error& err) {
    return holo::cli::emit_error(err, out_path, args.quiet);
  } catch (const std::exception& ex) {
    return holo::cli::emit_error(holo::Error("InternalError", ex.what(), 3), out_path,
                                 args.quiet);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum holonomy engine: Wilson-line holonomy matrices, quasienergy "
               "spectra, closed-form comparisons and adiabatic propagation"};
  app.require_subcommand(1);

  CommonArgs holonomy_args, spectrum_args, compare_args, propagate_args;
  CLI::App* holonomy = app.add_subcommand("holonomy", "compute W(C), B(C), M(C) on a loop");
  add_common(holonomy, holonomy_args);
  CLI::App* spectrum = app.add_subcommand("spectrum", "tracked quasienergy sweep to CSV");
  add_common(spectrum, spectrum_args);
  CLI::App* compare = app.add_subcommand("compare", "numeric pipeline vs closed forms");
  add_common(compare, compare_args);
  CLI::App* propagate = app.add_subcommand("propagate", "brute-force adiabatic evolution");
  add_common(propagate, propagate_args);

  CLI11_PARSE(app, argc, argv);

  if (holonomy->parsed()) return dispatch(holonomy_args, holo::cli::run_holonomy);
  if (spectrum->parsed()) return dispatch(spectrum_args, holo::cli::run_spectrum);
  if (compare->parsed()) return dispatch(compare_args, holo::cli::run_compare);
  return dispatch(propagate_args, holo::cli::run_propagate);
}
