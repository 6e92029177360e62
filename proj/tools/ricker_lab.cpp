#include <iostream>
#include <string>
#include <vector>

#include "ricker/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ricker::cli::run_cli(std::move(args), std::cout, std::cerr);
}
