#include <iostream>

#include "segal/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return segal::cli::run(args, std::cout, std::cerr);
}
