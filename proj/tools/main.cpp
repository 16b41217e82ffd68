#include <iostream>

#include "mdlgauge/cli.hpp"

int main(int argc, char** argv) {
  return mdlgauge::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
