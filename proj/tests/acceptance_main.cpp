#include <iostream>

#include "glq/acceptance.hpp"

int main() {
  glq::acceptance::Options opts;
  opts.workers = 2;
  opts.progress = &std::cerr;
  return glq::acceptance::run_and_print(std::cout, opts);
}
