#include <iostream>
#include <string>
#include <vector>

#include "rbl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rbl::run_cli(args, std::cout, std::cerr);
}
