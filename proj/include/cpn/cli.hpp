#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpn::cli {

/// Process exit codes, one class per failure kind.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitTermination = 3,
  kExitResidual = 4,
  kExitIo = 5,
};

/// Runs the command line `args` (without the program name). Machine-readable
/// output goes to `out` unless --out names a file; diagnostics and the
/// human-readable summary go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpn::cli
