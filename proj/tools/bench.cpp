// Benchmark comparing the serial reference kernels against the OpenMP paths.
// Counts and sums must agree exactly; timings show the speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glq/constants.hpp"
#include "glq/distribution.hpp"
#include "glq/ensembles.hpp"
#include "glq/singer.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Row {
  std::string task;
  double serial_s = 0;
  double parallel_s = 0;
  bool equal = false;
};

void print_row(const Row& r) {
  std::printf("%-42s %10.3fs %10.3fs %8.2fx   %s\n", r.task.c_str(), r.serial_s,
              r.parallel_s, r.serial_s / r.parallel_s,
              r.equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  int workers = 0;
#ifdef _OPENMP
  workers = omp_get_max_threads();
#endif
  if (argc > 1) workers = std::atoi(argv[1]);
  if (workers < 2) workers = 2;
  std::printf("serial reference vs OpenMP kernels (%d workers)\n\n", workers);
  std::printf("%-42s %11s %11s %9s\n", "task", "serial", "parallel", "speedup");

  using namespace glq;

  {
    auto spec = singer::make_group_spec(2, arith::prime_power_from_q(25));
    singer::OracleConfig serial_cfg;
    singer::OracleConfig par_cfg;
    par_cfg.workers = workers;
    Row row;
    row.task = "matrix oracle GL_2(25)";
    auto t0 = Clock::now();
    u64 a = singer::oracle_count_max_order_elements_serial(spec, serial_cfg);
    row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    u64 b = singer::oracle_count_max_order_elements(spec, par_cfg);
    row.parallel_s = seconds_since(t0);
    row.equal = a == b;
    print_row(row);
  }

  {
    auto spec = singer::make_group_spec(3, arith::prime_power_from_q(4));
    singer::OracleConfig serial_cfg;
    singer::OracleConfig par_cfg;
    par_cfg.workers = workers;
    Row row;
    row.task = "matrix oracle GL_3(4)";
    auto t0 = Clock::now();
    u64 a = singer::oracle_count_max_order_elements_serial(spec, serial_cfg);
    row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    u64 b = singer::oracle_count_max_order_elements(spec, par_cfg);
    row.parallel_s = seconds_since(t0);
    row.equal = a == b;
    print_row(row);
  }

  {
    ensembles::EnsembleConfig serial_cfg;
    ensembles::EnsembleConfig par_cfg;
    par_cfg.workers = workers;
    Row row;
    row.task = "density sweep n=3, prime powers <= 3e4";
    auto t0 = Clock::now();
    auto a = ensembles::average_over_prime_powers(3, 3e4, serial_cfg);
    row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    auto b = ensembles::average_over_prime_powers(3, 3e4, par_cfg);
    row.parallel_s = seconds_since(t0);
    row.equal = a.empirical_mean == b.empirical_mean && a.raw_sum == b.raw_sum;
    print_row(row);
  }

  {
    Row row;
    row.task = "direct series P(2,1), m <= 2e5";
    auto t0 = Clock::now();
    double a = constants::series_P_direct(2, 1, 200'000, 1);
    row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    double b = constants::series_P_direct(2, 1, 200'000, workers);
    row.parallel_s = seconds_since(t0);
    row.equal = a == b;
    print_row(row);
  }

  return 0;
}
