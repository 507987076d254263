#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mas::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitSemantic = 1,  // E1xx, or warnings under --strict
  kExitParse = 2,     // P0xx
  kExitUsage = 3,
  kExitPortInUse = 4,
};

// Runs one command.  `args` excludes the program name.  Documents go to
// `out` (or to files under --out), diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mas::cli
