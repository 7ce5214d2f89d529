#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glq/constants.hpp"
#include "glq/rational.hpp"
#include "glq/singer.hpp"

namespace glq::ensembles {

enum class Mode { prime_powers, extensions, ranks };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

struct EnsembleConfig {
  int workers = 1;
  // After this many terms the running sum switches from exact rationals to
  // compensated floating point (it also switches on 128-bit overflow).
  u64 exact_term_threshold = 10'000;
  u64 theory_prime_bound = 1'000'000;
  u32 theory_K = 0;  // 0 = default truncation for the characteristic
  std::ostream* progress = nullptr;
};

struct AverageReport {
  Mode mode = Mode::prime_powers;
  u32 n = 0;   // rank (prime_powers, extensions)
  u128 p = 0;  // characteristic (extensions, ranks)
  u32 r = 0;   // extension degree (ranks)
  u128 q = 0;  // fixed field size (ranks)

  double requested_x = 0;
  double x = 0;  // effective bound; smaller than requested_x only when the
                 // prime-power sweep was truncated at the 128-bit range
  bool truncated = false;

  u64 sample_size = 0;
  double raw_sum = 0;       // sum of the densities before normalization
  u64 exact_terms = 0;      // leading terms accumulated in exact rationals
  double empirical_mean = 0;
  constants::CertifiedValue theoretical;
  double discrepancy = 0;

  std::string params_str() const;  // "n=2" / "p=2;n=1" / "p=3;r=2"
};

// Exact density values per ensemble, in ascending parameter order. The fill
// is embarrassingly parallel (workers > 1 uses OpenMP); the values are exact
// rationals so the content never depends on scheduling.
std::vector<Rational> density_values_prime_powers(u32 n, double x,
                                                  const EnsembleConfig& cfg);
std::vector<Rational> density_values_extensions(u128 p, u32 n, double x,
                                                const EnsembleConfig& cfg);
std::vector<Rational> density_values_ranks(const arith::PrimePower& q, double x,
                                           const EnsembleConfig& cfg);

AverageReport average_over_prime_powers(u32 n, double x,
                                        const EnsembleConfig& cfg = {});
AverageReport average_over_extensions(u128 p, u32 n, double x,
                                      const EnsembleConfig& cfg = {});
AverageReport average_over_ranks(const arith::PrimePower& q, double x,
                                 const EnsembleConfig& cfg = {});

struct LadderParams {
  Mode mode = Mode::prime_powers;
  u32 n = 1;             // prime_powers, extensions
  u128 p = 2;            // extensions
  arith::PrimePower q;   // ranks
};

// One report per x, ascending; each report extends the previous sums instead
// of recomputing, and the final report is bit-identical to a direct call.
std::vector<AverageReport> convergence_ladder(const LadderParams& params,
                                              const std::vector<double>& xs,
                                              const EnsembleConfig& cfg = {});

}  // namespace glq::ensembles
