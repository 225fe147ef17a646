#include "pcdeg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return pcdeg::cli_main(argc, argv, std::cout, std::cerr);
}
