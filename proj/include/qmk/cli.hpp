#pragma once

#include <string>
#include <vector>

namespace qmk::cli {

struct Result {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name), e.g.
/// {"qm", "eval", "1/3"}. Never throws.
Result run(const std::vector<std::string>& args);

}  // namespace qmk::cli
