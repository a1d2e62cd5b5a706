#include <iostream>

#include "qmk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  qmk::cli::Result r = qmk::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
