#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glq/error.hpp"
#include "glq/int128.hpp"
#include "glq/records.hpp"

namespace glq::cli {

// Fully validated invocation of one library operation (or the acceptance
// bundle). Field meanings depend on verb/subverb; parse_args fills defaults.
struct RunConfig {
  std::string verb;
  std::string subverb;
  std::string mode;  // ensemble mode for avg/dist commands

  u32 n = 0;
  std::string p;  // decimal string, parsed per operation (may exceed 64 bits)
  u32 r = 0;
  std::string q;  // decimal string, prime power
  double x = 0;
  double x1 = 0;
  double x2 = 0;
  std::vector<double> xs;
  u32 k = 0;
  u64 prime_bound = 0;
  u64 m_bound = 0;
  u64 group_cap = 2'000'000;
  u64 poly_cap = 1'000'000;
  u32 field_cap = 512;

  bool direct = false;
  bool terms = false;
  bool decimals = false;

  records::Format output_format = records::Format::plain;
  std::string cache_path;
  int worker_count = 1;
  bool seedless = true;  // accepted for interface stability; always true
  bool progress = false;
};

// Executes exactly one operation, streaming records to out and diagnostics
// to err; returns the process exit code. Throws glq errors for failures.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parse argv (without the program name) into a RunConfig. Throws
// InvalidArgument on bad usage; help requests set verb = "help" and fill
// help_text.
RunConfig parse_args(const std::vector<std::string>& args, std::string& help_text);

// Full entry point: parse, load cache, run, save cache, map errors to exit
// codes and emit one structured error record on err.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

inline constexpr const char* kCacheEnvVar = "GLQ_FACTOR_CACHE";

}  // namespace glq::cli
