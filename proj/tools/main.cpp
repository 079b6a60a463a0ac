#include <iostream>
#include <string>
#include <vector>

#include "nilpiece/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilpiece::run(args, std::cout, std::cerr);
}
