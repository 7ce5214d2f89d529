#pragma once

#include <string>

#include "glq/arith.hpp"
#include "glq/matrix.hpp"
#include "glq/rational.hpp"

namespace glq::singer {

// The pair (n, q) addressing GL_n(q). Construction checks q^n - 1 < 2^128.
struct GroupSpec {
  u32 n = 1;
  arith::PrimePower q;

  u128 order_bound() const;  // q^n - 1
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

GroupSpec make_group_spec(u32 n, const arith::PrimePower& q);

// |GL_n(q)| = prod_{i=0}^{n-1} (q^n - q^i); RangeError on overflow.
u128 gl_order(const GroupSpec& spec);

// Exact count of elements of maximal order q^n - 1:
// |GL_n(q)| / (q^n - 1) * phi(q^n - 1) / n. The divisions are exact and
// asserted at runtime.
u128 singer_count(const GroupSpec& spec);

// phi(q^n - 1) / n, the number of primitive polynomials of degree n.
u128 primitive_poly_count(const GroupSpec& spec);

// Density of maximal-order elements: phi(q^n-1) / (n * (q^n-1)), kept exact.
struct DensityRecord {
  GroupSpec spec;
  u128 phi_value = 0;  // phi(q^n - 1)
  u128 modulus = 0;    // q^n - 1
  Rational density;    // reduced
  double value = 0;    // floating rendering
};

DensityRecord density(const GroupSpec& spec);

struct OracleConfig {
  u64 group_cap = 2'000'000;   // max |GL_n(q)| for matrix enumeration
  u64 poly_cap = 1'000'000;    // max q^n for polynomial enumeration
  u32 field_cap = kDefaultFieldCap;
  int workers = 1;             // 1 = serial reference path
};

// Exhaustive matrix-enumeration count of elements of order exactly q^n - 1.
// Partitions the index space over OpenMP workers when workers > 1; the count
// is an exact integer reduction, identical to the serial path.
u64 oracle_count_max_order_elements(const GroupSpec& spec,
                                    const OracleConfig& cfg = {});

// Serial reference implementation (kept for tests and benchmarking).
u64 oracle_count_max_order_elements_serial(const GroupSpec& spec,
                                           const OracleConfig& cfg = {});

// Exhaustive enumeration of monic degree-n polynomials with nonzero constant
// term; counts those of order exactly q^n - 1 (irreducible candidates only).
u64 oracle_count_primitive_polys(const GroupSpec& spec,
                                 const OracleConfig& cfg = {});

u64 oracle_count_primitive_polys_serial(const GroupSpec& spec,
                                        const OracleConfig& cfg = {});

// Order of one invertible matrix by naive repeated multiplication; test help
// for validating the prime-quotient order logic.
u64 naive_matrix_order(const SmallField& f, const SmallMatrix& m, u64 cap);

// Every (n, q) with |GL_n(q)| <= group_cap and q <= field_cap, ascending in
// (n, q); the index set swept by `oracle verify` and the acceptance suite.
std::vector<GroupSpec> specs_under_cap(u64 group_cap, u32 field_cap);

}  // namespace glq::singer
