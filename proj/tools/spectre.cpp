#include <iostream>

#include "spectre/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spectre::cli::run(args, std::cout, std::cerr);
}
