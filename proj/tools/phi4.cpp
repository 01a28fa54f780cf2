#include <iostream>
#include <string>
#include <vector>

#include "phi4/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return phi4::run_cli(args, std::cout, std::cerr);
}
