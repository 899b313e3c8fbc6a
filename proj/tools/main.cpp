#include <iostream>

#include "tk5/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tk5::cli::run(args, std::cout, std::cerr);
}
