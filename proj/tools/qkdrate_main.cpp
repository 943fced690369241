#include <iostream>
#include <string>
#include <vector>

#include "qkdrate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qkdrate::cli::run(args, std::cout, std::cerr);
}
