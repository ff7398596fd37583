#include <iostream>
#include <string>
#include <vector>

#include "reflexive/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return reflexive::run_command(args, std::cout, std::cerr);
}
