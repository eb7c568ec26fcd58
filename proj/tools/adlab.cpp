#include <iostream>
#include <string>
#include <vector>

#include "adlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return adlab::cli::run(args, std::cout, std::cerr);
}
