#include <iostream>
#include <string>
#include <vector>

#include "gaplab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gaplab::cli::run(args, std::cout, std::cerr);
}
