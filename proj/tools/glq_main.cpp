#include <iostream>

#include "glq/cli.hpp"

int main(int argc, char** argv) {
  return glq::cli::main_entry(argc, argv, std::cout, std::cerr);
}
