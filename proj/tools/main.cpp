#include <iostream>
#include <string>
#include <vector>

#include "clusterdouble/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return clusterdouble::run_cli(args, std::cout, std::cerr);
}
