#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glq/int128.hpp"

namespace glq::arith {

struct FactorEntry {
  u128 prime = 0;
  u32 exponent = 0;
  friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

// Exact prime factorization; primes strictly ascending, value == product.
// value == 1 has an empty factor list.
struct Factorization {
  u128 value = 1;
  std::vector<FactorEntry> factors;

  u128 product() const;
  u32 omega() const { return static_cast<u32>(factors.size()); }
  bool is_squarefree() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Deterministic primality for all n < 2^128. Below 2^64 a proven
// Miller-Rabin base set is used; above that, fixed prime bases plus a strong
// Lucas test (same fixed parameter rule every call).
bool is_prime(u128 n);

struct FactorConfig {
  u64 trial_bound = 100'000;
  u64 rho_iteration_cap = 1u << 26;
  u32 rho_rounds = 24;  // distinct polynomial increments tried before giving up
};

// Exact factorization of 1 <= n < 2^128. Deterministic: the same n always
// yields the same result or the same FactorExhausted error.
Factorization factor(u128 n);
Factorization factor(u128 n, const FactorConfig& cfg);

u128 euler_phi(const Factorization& f);
u128 carmichael_lambda(const Factorization& f);

// All divisors, ascending.
std::vector<u128> divisors(const Factorization& f);

// Squarefree divisors with their Mobius sign (+1/-1), in subset order.
std::vector<std::pair<u128, int>> squarefree_divisors(const Factorization& f);

// Integer value of the d-th cyclotomic polynomial at x. Throws RangeError if
// the value (or a Horner intermediate) leaves 128 bits.
u128 cyclotomic_value(u32 d, u128 x);

// In-memory get-or-insert factorization cache with optional text-file
// persistence ("N p1 e1 p2 e2 ..." per line, ascending N). Lookups are
// purely an optimization; results never depend on hits.
class FactorCache {
 public:
  std::optional<Factorization> lookup(u128 n) const;
  void insert(const Factorization& f);

  // Returns the number of accepted entries. Corrupt lines are reported
  // through warn and rejected.
  std::size_t load(const std::string& path,
                   const std::function<void(const std::string&)>& warn);
  void save(const std::string& path) const;

  struct Stats {
    u64 hits = 0;
    u64 misses = 0;
    u64 entries = 0;
  };
  Stats stats() const;

  static constexpr std::size_t kMaxEntries = 1u << 20;

 private:
  mutable std::mutex mutex_;
  std::map<u128, Factorization> entries_;
  mutable u64 hits_ = 0;
  mutable u64 misses_ = 0;
};

// Process-wide cache used by factor(); always present, persistence opt-in.
FactorCache& factor_cache();

}  // namespace glq::arith
