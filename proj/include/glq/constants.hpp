#pragma once

#include <string>
#include <vector>

#include "glq/arith.hpp"
#include "glq/rational.hpp"

namespace glq::constants {

// A numerical estimate of a limit constant together with a rigorous bound on
// |estimate - true value| and the truncation parameter that produced it.
// meta spells out the inequality chain behind the bound.
struct CertifiedValue {
  double estimate = 0;
  double error_bound = 0;
  u64 truncation = 0;
  std::string meta;

  double lower() const { return estimate - error_bound; }
  double upper() const { return estimate + error_bound; }
  bool contains_zero() const { return lower() <= 0 && 0 <= upper(); }
  bool intersects(const CertifiedValue& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
  }
};

// One order class of the grouped series: the exact inner sum
// sum mu(m)/m over squarefree m coprime to p with mult_order(p, m) = k.
// Every contributing m divides p^k - 1.
struct OrderGroupedTerm {
  u32 k = 1;
  Rational inner_sum;
  std::vector<u128> support;  // ascending
};

// Truncated Euler product (1/n) * prod_{p <= prime_bound} (1 - gcd(p-1,n)/(p(p-1)))
// with a certified tail bound. n = 1 gives the Artin constant.
CertifiedValue euler_product_pn(u32 n, u64 prime_bound);

struct GroupedSeries {
  CertifiedValue value;
  std::vector<OrderGroupedTerm> terms;
};

// Series sum_k (gcd(k,r)/k) * inner_sum(k) truncated at k = K, inner sums
// exact; certified tail bound from the divisor-sum device (see meta).
CertifiedValue series_P_grouped(u128 p, u32 r, u32 K);
GroupedSeries series_P_grouped_detailed(u128 p, u32 r, u32 K);

// Direct summation over squarefree m <= M coprime to p, natural order.
// Diagnostic cross-check only: no certified bound.
double series_P_direct(u128 p, u32 r, u64 M, int workers = 1);

// Default truncation: keeps p^K - 1 within 128 bits.
u32 default_series_truncation(u128 p);

}  // namespace glq::constants
