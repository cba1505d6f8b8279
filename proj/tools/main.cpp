#include <iostream>

#include "lpds/cli.hpp"

int main(int argc, char** argv) {
  return lpds::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
