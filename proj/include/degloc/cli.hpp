#pragma once

#include <iosfwd>
#include <string>

#include "degloc/applications.hpp"
#include "degloc/problem_file.hpp"

namespace degloc {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitPromise = 3,
  kExitRandomness = 4,
};

/// Polynomial in `var` with exact rational coefficients, highest degree first.
std::string poly_text(const QPoly& p, const std::string& var = "T");

/// Command-line entry point; writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace degloc
