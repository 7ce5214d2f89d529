#pragma once

#include <cstdint>
#include <vector>

#include "glq/int128.hpp"

namespace glq::arith {

inline constexpr u64 kDefaultSieveCap = 100'000'000;

// Tables of mu, phi, tau, sigma for 1..limit, plus smallest prime factors.
// Index 0 is unused padding.
struct MultiplicativeTables {
  u64 limit = 0;
  std::vector<std::int8_t> mu;
  std::vector<u64> phi;
  std::vector<u32> tau;
  std::vector<u64> sigma;
  std::vector<u32> spf;

  bool is_squarefree(u64 k) const { return mu[k] != 0; }
};

// Linear sieve. Rejects limit == 0 or limit > cap.
MultiplicativeTables sieve_multiplicative(u64 limit, u64 cap = kDefaultSieveCap);

// Plain Eratosthenes prime list.
std::vector<u64> primes_up_to(u64 limit);

}  // namespace glq::arith
