#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glq::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  int workers = 2;  // used by the heavy sweeps; results are worker-invariant
  std::ostream* progress = nullptr;
};

std::vector<CriterionResult> run_all(const Options& opts = {});

// Prints one PASS/FAIL line per criterion plus a summary; returns 0 when all
// criteria pass, 1 otherwise.
int run_and_print(std::ostream& out, const Options& opts = {});

}  // namespace glq::acceptance
