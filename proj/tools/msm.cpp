#include <iostream>

#include "msmoments/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return msm::cli::run(args, std::cout, std::cerr);
}
