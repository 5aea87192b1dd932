#include <iostream>
#include <string>
#include <vector>

#include "stabgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stabgraph::cli::run(std::move(args), std::cout, std::cerr);
}
