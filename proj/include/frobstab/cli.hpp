#pragma once

#include <string>
#include <vector>

namespace frobstab {

/// Exit codes: 0 success, 2 negative mathematical verdict, 1 error.
struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command; args exclude the program name. No process-global state is touched,
/// so equal arguments give byte-identical output.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace frobstab
