#include <iostream>

#include "fockmz/cli.hpp"

int main(int argc, char** argv) {
  return fockmz::cli::run(argc, argv, std::cout, std::cerr);
}
