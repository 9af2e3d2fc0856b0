#pragma once

#include <iosfwd>

namespace ldc::workbench {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInvalid = 2, kExitIncompatible = 3 };

/// Entry point of the `ldc` command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldc::workbench
