#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kvertex::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kComputation = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string subcommand;
  std::string legs = ";;";
  int order = 4;
  /// 0 means max(8, order + 1).
  int frame_dim = 0;
  /// Cutoff n_0 for the wall-crossing sums.
  int n0 = -1;
  /// 0 means the suite default.
  int max_n = 0;
  std::string suite = "all";
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
};

/// Throws UsageError for unknown flags, malformed legs or out-of-range numbers.
/// `--help` is reported as UsageError with an empty message.
Command parse_args(const std::vector<std::string>& args);

/// Writes the result to cmd.out (or `out` when empty); diagnostics go to `err`.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(int argc, char** argv);

}  // namespace kvertex::cli
