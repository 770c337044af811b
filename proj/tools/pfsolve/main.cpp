#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return pfsolve::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
