#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specest::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
  kNoConvergence = 4,
};

/// Entry point shared by the executable and the tests. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Value of SPECEST_THREADS, or 1 when unset.
int thread_cap();

}  // namespace specest::cli
