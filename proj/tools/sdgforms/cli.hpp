#pragma once

#include <ostream>

namespace sdg {

enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitResidue = 3,
};

/// Entry point of the `sdgforms` tool; subcommands verify, eval and report.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdg
