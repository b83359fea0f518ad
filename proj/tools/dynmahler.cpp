#include <iostream>
#include <string>
#include <vector>

#include "dynmahler/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dynmahler::cli::run(std::move(args), std::cout, std::cerr);
}
