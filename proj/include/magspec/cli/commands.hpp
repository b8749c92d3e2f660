#pragma once

#include "magspec/cli/artifact.hpp"
#include "magspec/cli/config.hpp"

namespace magspec::cli {

/// Runs one subcommand. Library errors propagate unchanged; failed
/// verdicts are recorded as checks on the artifact.
RunArtifact run_command(const RunConfig& cfg);

/// Exit status for an artifact: 0 when every check passed, otherwise 3.
int exit_code(const RunArtifact& artifact);

}  // namespace magspec::cli
