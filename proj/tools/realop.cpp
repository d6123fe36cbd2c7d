#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "realop/bundle.hpp"
#include "realop/cli.hpp"
#include "realop/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"operator-algebra toolbox over matrix bundles"};
  std::string cmd;
  std::string path;
  realop::CliOptions options;
  double tol = options.tol.eq_tol;
  app.add_option("command", cmd,
                 "commutant, classify, polar, pvm, lattice, gleason, "
                 "extract-j, poincare-check or trace-factor")
      ->required();
  app.add_option("bundle", path, "path of a matrix bundle (json)")->required();
  app.add_option("--tol", tol, "equality tolerance override");
  app.add_flag("--json", options.json, "structured report");
  app.add_option("--seed", options.seed, "seed for sampled sweeps");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  options.tol.eq_tol = tol;

  try {
    const realop::MatrixBundle bundle = realop::load_bundle(path);
    const realop::CommandOutcome out = realop::run_command(cmd, bundle, options);
    if (!out.report.empty()) std::cout << out.report;
    if (!out.error.empty()) std::cerr << out.error << '\n';
    return out.exit_code;
  } catch (const realop::InputError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const realop::VerdictError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
