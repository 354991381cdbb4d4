#include "ahg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ahg::run_cli(args, std::cout, std::cerr);
}
