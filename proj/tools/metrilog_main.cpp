#include <iostream>
#include <vector>

#include "metrilog/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return metrilog::cli::run(args, std::cout, std::cerr);
}
