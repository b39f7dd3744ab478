#include <iostream>

#include "ptlab/cli.hpp"

int main(int argc, char** argv) {
  return ptlab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
