#include <iostream>
#include <string>
#include <vector>

#include "corplex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return corplex::cli::run(args, std::cout, std::cerr);
}
