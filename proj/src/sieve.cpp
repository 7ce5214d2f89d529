#include "glq/sieve.hpp"

#include "glq/error.hpp"

namespace glq::arith {

MultiplicativeTables sieve_multiplicative(u64 limit, u64 cap) {
  if (limit == 0)
    throw RangeError("sieve_multiplicative: limit must be at least 1");
  if (limit > cap)
    throw RangeError("sieve_multiplicative: limit " + std::to_string(limit) +
                     " exceeds cap " + std::to_string(cap));

  MultiplicativeTables t;
  t.limit = limit;
  t.mu.assign(limit + 1, 0);
  t.phi.assign(limit + 1, 0);
  t.tau.assign(limit + 1, 0);
  t.sigma.assign(limit + 1, 0);
  t.spf.assign(limit + 1, 0);

  t.mu[1] = 1;
  t.phi[1] = 1;
  t.tau[1] = 1;
  t.sigma[1] = 1;
  if (limit == 1) return t;

  // cnt[i]: multiplicity of spf(i) in i; spp[i]: sigma(spf^cnt).
  std::vector<u32> cnt(limit + 1, 0);
  std::vector<u64> spp(limit + 1, 0);
  std::vector<u64> primes;
  primes.reserve(static_cast<size_t>(limit / 12) + 16);

  for (u64 i = 2; i <= limit; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = static_cast<u32>(i);
      primes.push_back(i);
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      t.tau[i] = 2;
      t.sigma[i] = i + 1;
      cnt[i] = 1;
      spp[i] = i + 1;
    }
    for (u64 p : primes) {
      if (p > t.spf[i] || i * p > limit) break;
      u64 ip = i * p;
      t.spf[ip] = static_cast<u32>(p);
      if (p == t.spf[i]) {
        cnt[ip] = cnt[i] + 1;
        spp[ip] = spp[i] * p + 1;
        t.mu[ip] = 0;
        t.phi[ip] = t.phi[i] * p;
        t.tau[ip] = t.tau[i] / (cnt[i] + 1) * (cnt[ip] + 1);
        t.sigma[ip] = t.sigma[i] / spp[i] * spp[ip];
        break;
      }
      cnt[ip] = 1;
      spp[ip] = p + 1;
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
      t.phi[ip] = t.phi[i] * (p - 1);
      t.tau[ip] = t.tau[i] * 2;
      t.sigma[ip] = t.sigma[i] * (p + 1);
    }
  }
  return t;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      if (i <= limit / i)
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

}  // namespace glq::arith
