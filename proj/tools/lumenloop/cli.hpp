#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lumenloop::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kProviderFailure = 3,
  kBudgetExhausted = 4,
};

inline constexpr const char* kDefaultOutDir = "lumenloop-out";

// Entry point shared by main() and the tests. Machine-readable results go to
// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lumenloop::cli
