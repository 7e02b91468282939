#include <iostream>
#include <string>
#include <vector>

#include "hyperstretch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperstretch::cli_run(args, std::cout, std::cerr);
}
