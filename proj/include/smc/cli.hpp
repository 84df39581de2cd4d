#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smc {

/// Process exit codes of the `smc` driver.
enum ExitStatus : int {
  kExitOk = 0,
  kExitInput = 1,       // parse, validation or mark error
  kExitRuntime = 2,     // runtime error, scenario error or failed expectation
  kExitMismatch = 3,    // equivalence or interface-check failure
  kExitUsage = 4,       // bad flags, missing or unwritable files
};

/// Runs one `smc` invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smc
