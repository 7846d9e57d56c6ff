#include <iostream>

#include "modspec/cli.hpp"

int main(int argc, char** argv) {
  return modspec::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
