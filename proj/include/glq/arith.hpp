#pragma once

#include <vector>

#include "glq/factor.hpp"
#include "glq/int128.hpp"

namespace glq::arith {

// q = p^r with p prime, r >= 1.
struct PrimePower {
  u128 p = 2;
  u32 r = 1;
  u128 q = 2;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend bool operator<(const PrimePower& a, const PrimePower& b) {
    return a.q < b.q;
  }
};

// Validates p prime and computes q = p^r (RangeError past 2^128).
PrimePower make_prime_power(u128 p, u32 r);

// Recognizes q as a prime power or throws InvalidArgument.
PrimePower prime_power_from_q(u128 q);

// Factorization of q^n - 1 assembled from the cyclotomic values Phi_d(q),
// d | n. Same result as factor(q^n - 1).
Factorization factor_qn_minus_1(const PrimePower& q, u32 n);

// Least k >= 1 with p^k == 1 (mod m); requires gcd(p, m) == 1. Computed by
// factoring lambda(m) and descending through its prime divisors.
// mult_order(p, 1) == 1 by convention.
u128 mult_order(u128 p, u128 m);

// Same, reusing a known factorization of m (m squarefree or not).
u128 mult_order(u128 p, const Factorization& m_fact);

// Number of residues a mod m with a^n == 1 (mod m). Multiplicative in m;
// the local count at p^e comes from the unit group structure: for odd p,
// gcd(phi(p^e), n); for 2, 4, 2^e (e >= 3): 1, gcd(2, n),
// gcd(2, n) * gcd(2^(e-2), n).
u128 rho_count(u128 n, u128 m);

struct PrimePowerEnumeration {
  double x = 0;
  std::vector<PrimePower> entries;  // ascending q
  u64 count = 0;                    // Q(x)
};

// All prime powers q <= x. x < 2 yields an empty enumeration.
PrimePowerEnumeration enumerate_prime_powers(double x);

}  // namespace glq::arith
