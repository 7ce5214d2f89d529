#include "glq/arith.hpp"

#include <algorithm>
#include <cmath>

#include "glq/error.hpp"
#include "glq/sieve.hpp"

namespace glq::arith {

PrimePower make_prime_power(u128 p, u32 r) {
  if (r == 0) throw InvalidArgument("prime power: exponent must be >= 1");
  if (!is_prime(p))
    throw InvalidArgument("prime power: " + to_string(p) + " is not prime");
  PrimePower pp;
  pp.p = p;
  pp.r = r;
  pp.q = checked_pow(p, r);
  return pp;
}

PrimePower prime_power_from_q(u128 q) {
  if (q < 2) throw InvalidArgument("prime power: q must be >= 2");
  Factorization f = factor(q);
  if (f.factors.size() != 1)
    throw InvalidArgument("prime power: " + to_string(q) +
                          " is not a power of a single prime");
  PrimePower pp;
  pp.p = f.factors[0].prime;
  pp.r = f.factors[0].exponent;
  pp.q = q;
  return pp;
}

Factorization factor_qn_minus_1(const PrimePower& q, u32 n) {
  if (n == 0) throw InvalidArgument("factor_qn_minus_1: n must be >= 1");
  u128 qn = checked_pow(q.q, n);  // RangeError if q^n leaves 128 bits
  u128 target = qn - 1;
  if (target == 0) throw InvalidArgument("factor_qn_minus_1: q^n - 1 is zero");

  std::map<u128, u32> merged;
  try {
    for (u32 d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      u128 value = cyclotomic_value(d, q.q);
      Factorization part = factor(value);
      for (const auto& e : part.factors) merged[e.prime] += e.exponent;
    }
  } catch (const RangeError&) {
    // Horner intermediates can exceed 128 bits when q^n - 1 is close to the
    // cap even though every cyclotomic value fits; factor directly then.
    return factor(target);
  }

  Factorization result;
  result.value = target;
  for (const auto& [p, e] : merged) result.factors.push_back({p, e});
  if (result.product() != target)
    throw Error("factor_qn_minus_1: cyclotomic assembly mismatch for q=" +
                to_string(q.q) + " n=" + std::to_string(n));
  factor_cache().insert(result);
  return result;
}

u128 mult_order(u128 p, u128 m) {
  if (m == 0) throw InvalidArgument("mult_order: modulus must be positive");
  if (m == 1) return 1;
  if (gcd128(p % m, m) != 1)
    throw InvalidArgument("mult_order: arguments not coprime");
  return mult_order(p, factor(m));
}

u128 mult_order(u128 p, const Factorization& m_fact) {
  const u128 m = m_fact.value;
  if (m == 0) throw InvalidArgument("mult_order: modulus must be positive");
  if (m == 1) return 1;
  if (gcd128(p, m) != 1)
    throw InvalidArgument("mult_order: arguments not coprime");

  u128 lambda = carmichael_lambda(m_fact);
  Factorization lf = factor(lambda);
  u128 order = lambda;
  for (const auto& e : lf.factors) {
    for (u32 i = 0; i < e.exponent; ++i) {
      if (order % e.prime != 0) break;
      u128 reduced = order / e.prime;
      if (pow_mod(p, reduced, m) == 1)
        order = reduced;
      else
        break;
    }
  }
  return order;
}

u128 rho_count(u128 n, u128 m) {
  if (n == 0) throw InvalidArgument("rho_count: exponent must be positive");
  if (m == 0) throw InvalidArgument("rho_count: modulus must be positive");
  if (m == 1) return 1;
  Factorization f = factor(m);
  u128 total = 1;
  for (const auto& e : f.factors) {
    u128 local;
    if (e.prime == 2) {
      if (e.exponent == 1) {
        local = 1;
      } else if (e.exponent == 2) {
        local = gcd128(2, n);
      } else {
        u128 half = static_cast<u128>(1) << (e.exponent - 2);
        local = checked_mul(gcd128(2, n), gcd128(half, n));
      }
    } else {
      u128 phi_pe = checked_mul(checked_pow(e.prime, e.exponent - 1), e.prime - 1);
      local = gcd128(phi_pe, n);
    }
    total = checked_mul(total, local);
  }
  return total;
}

PrimePowerEnumeration enumerate_prime_powers(double x) {
  PrimePowerEnumeration out;
  out.x = x;
  if (!(x >= 2)) return out;
  if (x > 1e8)
    throw RangeError("enumerate_prime_powers: bound " + std::to_string(x) +
                     " exceeds the sieve cap 1e8");
  u64 bound = static_cast<u64>(x);
  std::vector<u64> primes = primes_up_to(bound);
  for (u64 p : primes) {
    u128 q = p;
    u32 r = 1;
    while (q <= bound) {
      PrimePower pp;
      pp.p = p;
      pp.r = r;
      pp.q = q;
      out.entries.push_back(pp);
      if (q > bound / p) break;
      q *= p;
      ++r;
    }
  }
  std::sort(out.entries.begin(), out.entries.end());
  out.count = out.entries.size();
  return out;
}

}  // namespace glq::arith
