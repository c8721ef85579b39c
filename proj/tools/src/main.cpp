#include <iostream>

#include "lea/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lea::cli::run(args, std::cout, std::cerr);
}
