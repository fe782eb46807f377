#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polymod::cli {

  /// Exit codes of run().
  inline constexpr int exit_ok            = 0;
  inline constexpr int exit_domain_failure = 1;
  inline constexpr int exit_usage         = 2;

  /// Runs the command line `args` (without the program name), writing the
  /// report to `out` and diagnostics to `err`.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

  /// FNV-1a 64-bit digest of `bytes`, as 16 hex digits.
  std::string digest(std::string const& bytes);

}  // namespace polymod::cli
