#include <iostream>
#include <string>
#include <vector>

#include "cospan/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cospan::cli::run(args, std::cout, std::cerr);
}
