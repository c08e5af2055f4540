#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cbs/harness.hpp"
#include "cbs/io.hpp"

namespace cbs {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  kExitNumericalError = 3,
};

/// Report for `bound`: exact lhs, the full catalog (Gram path in vectors
/// mode, per unit probe), and the tightest entry.
Json bound_report(const ProblemFile& problem, std::span<const double> grid);

/// Report for `verify`.
Json verify_report(const VerificationResult& result, const Json& input, double tol);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbs
