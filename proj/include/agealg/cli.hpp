#pragma once

// Command-line front end. Every report goes to `out`; diagnostics go to `err`.
// Exit codes: 0 ok, 2 input error, 3 undetermined bound, 4 consistency
// violation, 5 fit failure.

#include <ostream>
#include <string_view>

namespace agealg {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitUndetermined = 3,
  kExitConsistency = 4,
  kExitFit = 5,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agealg
