#include <iostream>
#include <string>
#include <vector>

#include "diachrona/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return diachrona::run_cli(args, std::cout, std::cerr);
}
