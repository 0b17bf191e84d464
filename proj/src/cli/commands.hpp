#pragma once

#include <iosfwd>

namespace fnlse::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNotConverged = 2,
};

/// Entry point for the `fnlse` tool: estimate | predict | sweep | reproduce |
/// variance. Never throws; errors go to `err` with exit code kInputError.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fnlse::cli
