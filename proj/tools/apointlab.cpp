#include <iostream>

#include "apointlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return apointlab::cli::run(args, std::cout, std::cerr);
}
