#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glq/ensembles.hpp"

namespace glq::distribution {

using ensembles::EnsembleConfig;
using ensembles::Mode;

// Weighted sorted sample defining an empirical distribution function. All
// three ensembles store the rescaled values n * p_n(q) so supports share the
// common interval (0, 1]; ties are kept as multiplicity.
struct ECDF {
  std::vector<Rational> sample;   // ascending, exact jump locations
  std::vector<double> sample_d;   // parallel double renderings
  u64 size = 0;
  std::string meta;

  // Proportion of sample values <= z (right-continuous step function),
  // evaluated on the double renderings.
  double evaluate(double z) const;
};

ECDF ecdf_prime_powers(u32 n, double x, const EnsembleConfig& cfg = {});
ECDF ecdf_extensions(u128 p, u32 n, double x, const EnsembleConfig& cfg = {});
ECDF ecdf_ranks(const arith::PrimePower& q, double x,
                const EnsembleConfig& cfg = {});

// sup_z |a(z) - b(z)|, computed exactly by scanning the merged jump points.
double kolmogorov_distance(const ECDF& a, const ECDF& b);

// CSV export: columns z, F(z), one row per jump point. Jump locations print
// as exact rationals unless decimals is set (15 significant digits).
void write_ecdf_csv(std::ostream& out, const ECDF& ecdf, bool decimals = false);

struct LadderDiagnostic {
  std::string mode;
  std::string params;
  double x1 = 0;
  double x2 = 0;
  double distance = 0;
};

void write_ladder_line(std::ostream& out, const LadderDiagnostic& d);

}  // namespace glq::distribution
