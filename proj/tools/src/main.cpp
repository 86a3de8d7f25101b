#include <iostream>

#include "jamoparse/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return jamoparse::cli::run(argc, argv, std::cout, std::cerr, std::cin);
}
