#pragma once

#include <cstdint>
#include <string>

#include "realop/bundle.hpp"
#include "realop/types.hpp"

namespace realop {

/// Flags shared by every subcommand. The tolerance block is handed to each
/// delegated operation; the seed feeds the sampled sweeps (lattice).
struct CliOptions {
  Tolerances tol;
  bool json = false;      ///< structured report instead of plain text
  std::uint64_t seed = 0; ///< sampling seed for projector sweeps
};

/// What one invocation produced: the report for standard output, a failure
/// line for standard error, and the process exit status. 0 means the
/// delegated operation ran and passed, 1 an input problem, 2 a negative
/// mathematical verdict.
struct CommandOutcome {
  int exit_code = 0;
  std::string report;
  std::string error;
};

/// Dispatches one subcommand over a loaded bundle. Known commands: commutant,
/// classify, polar, pvm, lattice, gleason, extract-j, poincare-check,
/// trace-factor. Unknown names raise UnknownCommand. Errors thrown by the
/// delegated operation are folded into the outcome instead of propagated:
/// the message is kept, prefixed with the command and the error name, and
/// input errors map to exit 1, verdict failures to exit 2. Identical bundle
/// and options give a byte-identical report; every matrix a structured
/// report emits re-loads bit-equal through parse_bundle.
CommandOutcome run_command(const std::string& cmd, const MatrixBundle& bundle,
                           const CliOptions& options = {});

}  // namespace realop
