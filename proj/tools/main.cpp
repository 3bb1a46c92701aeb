#include <iostream>

#include "dlogdist/cli.hpp"

int main(int argc, char** argv) {
  return dlogdist::run_cli(argc, argv, std::cout, std::cerr);
}
