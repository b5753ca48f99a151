#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morseforge {

/// Process exit codes.
enum ExitCode : int {
  exit_pass = 0,
  exit_failure = 1,
  exit_parse = 2,
  exit_hypothesis = 3,
  exit_unsupported = 4,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"synthesize", "-i", "points.json", "-o", "bundle.json"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morseforge
