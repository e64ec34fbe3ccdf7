#include <iostream>
#include <string>
#include <vector>

#include "fpe/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return fpe::cli::run(args, std::cout, std::cerr);
}
