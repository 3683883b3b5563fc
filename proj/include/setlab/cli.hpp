#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace setlab {

/// Runs one command-line invocation. `args` excludes the program name.
/// Reports go to `out` (or to the file named by --output), diagnostics to
/// `err`. Returns the process exit code:
///   0  the checked property holds, or every verdict is PASS/OPEN
///   1  a property is violated, a verdict is FAIL, or a transformation's
///      hypothesis fails (duality without a usable witness)
///   2  usage errors: unknown commands or flags, malformed values, file
///      parse failures, out-of-regime parameters, capability refusals
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setlab
