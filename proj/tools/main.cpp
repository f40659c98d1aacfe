#include <iostream>

#include "commdim/cli.hpp"

int main(int argc, char** argv) {
  return commdim::cli::run(argc, argv, std::cout, std::cerr);
}
