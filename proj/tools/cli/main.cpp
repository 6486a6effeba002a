#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return latsurj::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
