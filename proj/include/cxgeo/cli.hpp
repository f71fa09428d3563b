#pragma once

#include <iosfwd>

namespace cxgeo {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitDomain = 4,
  kExitNumerical = 5,
  kExitIo = 6,
};

// Entry point of `cxgeo`; output files go to $CXGEO_OUTPUT_DIR (default: the
// working directory).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cxgeo
