#include "cli_core.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return coarse_cli::run_cli(argc, argv, std::cout, std::cerr);
}
