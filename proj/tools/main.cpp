#include <iostream>

#include "permutab/cli.hpp"

int main(int argc, char** argv) {
  return permutab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
