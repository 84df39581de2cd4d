#include <iostream>

#include "smc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smc::run_cli(args, std::cout, std::cerr);
}
