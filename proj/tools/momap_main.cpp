#include <iostream>
#include <string>
#include <vector>

#include "momap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return momap::cli::dispatch(args, std::cout, std::cerr);
}
