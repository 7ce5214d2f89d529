#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "glq/arith.hpp"
#include "glq/error.hpp"
#include "glq/rational.hpp"
#include "glq/sieve.hpp"

using namespace glq;
using namespace glq::arith;

namespace {

// Independent segmented Mobius recomputation (trial-division primes, segment
// arrays); deliberately shares nothing with the linear sieve.
i64 mertens_segmented(u64 limit) {
  std::vector<u64> primes;
  for (u64 c = 2; c * c <= limit; ++c) {
    bool prime = true;
    for (u64 p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  i64 total = 0;
  const u64 seg = 1 << 15;
  std::vector<i64> mu(seg);
  std::vector<u64> rest(seg);
  for (u64 lo = 1; lo <= limit; lo += seg) {
    u64 hi = std::min(limit, lo + seg - 1);
    for (u64 k = lo; k <= hi; ++k) {
      mu[k - lo] = 1;
      rest[k - lo] = k;
    }
    for (u64 p : primes) {
      u64 p2 = p * p;
      for (u64 k = (lo + p - 1) / p * p; k <= hi; k += p) {
        if (rest[k - lo] % p2 == 0) {
          mu[k - lo] = 0;
          while (rest[k - lo] % p == 0) rest[k - lo] /= p;
        } else {
          mu[k - lo] = -mu[k - lo];
          rest[k - lo] /= p;
        }
      }
    }
    for (u64 k = lo; k <= hi; ++k) {
      if (mu[k - lo] == 0) continue;
      i64 m = mu[k - lo];
      if (rest[k - lo] > 1) m = -m;  // one prime factor above sqrt(limit)
      total += m;
    }
  }
  return total;
}

u128 brute_force_order(u64 p, u64 m) {
  if (m == 1) return 1;
  u64 acc = p % m;
  u64 k = 1;
  while (acc != 1) {
    acc = static_cast<u64>(static_cast<u128>(acc) * p % m);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("sieve small values") {
  auto t = sieve_multiplicative(10);
  CHECK(t.mu[6] == 1);
  CHECK(t.phi[10] == 4);
  CHECK(t.tau[10] == 4);
  CHECK(t.sigma[6] == 12);
  CHECK(t.mu[1] == 1);
  CHECK(t.phi[1] == 1);
  CHECK(t.tau[1] == 1);
  CHECK(t.sigma[1] == 1);
  for (u64 p : {2, 3, 5, 7}) {
    CHECK(t.mu[p] == -1);
    CHECK(t.phi[p] == p - 1);
    CHECK(t.tau[p] == 2);
    CHECK(t.sigma[p] == p + 1);
  }
}

TEST_CASE("sieve limit 1") {
  auto t = sieve_multiplicative(1);
  CHECK(t.mu.size() == 2);
  CHECK(t.phi[1] == 1);
}

TEST_CASE("sieve rejects bad limits") {
  CHECK_THROWS_AS(sieve_multiplicative(0), RangeError);
  CHECK_THROWS_AS(sieve_multiplicative(100, 10), RangeError);
}

TEST_CASE("Mertens sum vs independent segmented recomputation") {
  auto t = sieve_multiplicative(1'000'000);
  i64 linear = 0;
  for (u64 k = 1; k <= 1'000'000; ++k) linear += t.mu[k];
  i64 segmented = mertens_segmented(1'000'000);
  CHECK(linear == segmented);
  CHECK(linear == 212);  // frozen after the two paths agreed
}

TEST_CASE("mu/phi convolution spot checks") {
  auto t = sieve_multiplicative(5000);
  std::mt19937 gen(12345);
  std::uniform_int_distribution<u64> dist(1, 5000);
  for (int i = 0; i < 200; ++i) {
    u64 k = dist(gen);
    i64 conv = 0;
    for (u64 d = 1; d * d <= k; ++d) {
      if (k % d != 0) continue;
      conv += t.mu[d] * static_cast<i64>(k / d);
      if (d != k / d) conv += t.mu[k / d] * static_cast<i64>(d);
    }
    CHECK(conv == static_cast<i64>(t.phi[k]));
  }
}

TEST_CASE("deterministic primality, small and boundary") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(4));
  CHECK(is_prime(2147483647));               // 2^31 - 1
  CHECK_FALSE(is_prime(3215031751ull));      // strong pseudoprime to 2,3,5,7
  CHECK(is_prime(18446744073709551557ull));  // largest prime below 2^64
  // Mersenne exponents 89, 107, 127 give primes; 83 and 97 do not.
  auto mersenne = [](u32 e) { return (static_cast<u128>(1) << e) - 1; };
  CHECK(is_prime(mersenne(89)));
  CHECK(is_prime(mersenne(107)));
  CHECK(is_prime(mersenne(127)));
  CHECK_FALSE(is_prime(mersenne(83)));
  CHECK_FALSE(is_prime(mersenne(97)));
  CHECK_FALSE(is_prime(u128_max));
}

TEST_CASE("primality agrees with trial division up to 20000") {
  auto primes = primes_up_to(20000);
  std::size_t idx = 0;
  for (u64 n = 2; n <= 20000; ++n) {
    bool in_list = idx < primes.size() && primes[idx] == n;
    if (in_list) ++idx;
    CHECK(is_prime(n) == in_list);
  }
}

TEST_CASE("factor examples") {
  auto f24 = factor(24);
  REQUIRE(f24.factors.size() == 2);
  CHECK(f24.factors[0].prime == 2);
  CHECK(f24.factors[0].exponent == 3);
  CHECK(f24.factors[1].prime == 3);
  CHECK(f24.factors[1].exponent == 1);

  auto f80 = factor(80);  // 3^4 - 1
  REQUIRE(f80.factors.size() == 2);
  CHECK(f80.factors[0].prime == 2);
  CHECK(f80.factors[0].exponent == 4);
  CHECK(f80.factors[1].prime == 5);

  auto fm31 = factor((static_cast<u128>(1) << 31) - 1);
  REQUIRE(fm31.factors.size() == 1);
  CHECK(fm31.factors[0].prime == 2147483647);
  CHECK(fm31.factors[0].exponent == 1);

  CHECK(factor(1).factors.empty());
  CHECK_THROWS_AS(factor(0), InvalidArgument);
}

TEST_CASE("factor round-trip property") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 300; ++i) {
    u64 n = gen() % 1'000'000'000'000ull + 1;
    auto f = factor(n);
    CHECK(f.product() == n);
    u128 last = 0;
    for (const auto& e : f.factors) {
      CHECK(e.prime > last);
      last = e.prime;
      CHECK(is_prime(e.prime));
      CHECK(e.exponent >= 1);
    }
  }
}

TEST_CASE("factor hard composites") {
  // 2^67 - 1 = 193707721 * 761838257287 (no factor below the trial bound)
  auto f = factor((static_cast<u128>(1) << 67) - 1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 193707721);
  CHECK(f.factors[1].prime == 761838257287ull);

  // perfect power with a large base
  u128 big = static_cast<u128>(2147483647);
  auto fp = factor(big * big * big);
  REQUIRE(fp.factors.size() == 1);
  CHECK(fp.factors[0].prime == 2147483647);
  CHECK(fp.factors[0].exponent == 3);

  // above 2^64: 2^89 - 1 times a small prime
  u128 m89 = (static_cast<u128>(1) << 89) - 1;
  auto fb = factor(m89 * 97);
  REQUIRE(fb.factors.size() == 2);
  CHECK(fb.factors[0].prime == 97);
  CHECK(fb.factors[1].prime == m89);
}

TEST_CASE("exhausted retry budget is an explicit error, never a wrong answer") {
  FactorConfig tiny;
  tiny.trial_bound = 100;
  tiny.rho_iteration_cap = 4;
  tiny.rho_rounds = 1;
  // semiprime of two 10-digit primes; unsplittable within that budget
  u128 hard = static_cast<u128>(1000000007ull) * 1000000009ull;
  CHECK_THROWS_AS(factor(hard, tiny), FactorExhausted);
}

TEST_CASE("euler_phi and carmichael") {
  CHECK(euler_phi(factor(8)) == 4);
  CHECK(euler_phi(factor(1)) == 1);
  CHECK(euler_phi(factor(2047)) == 1936);
  CHECK(carmichael_lambda(factor(1)) == 1);
  CHECK(carmichael_lambda(factor(8)) == 2);
  CHECK(carmichael_lambda(factor(16)) == 4);
  CHECK(carmichael_lambda(factor(15)) == 4);
  CHECK(carmichael_lambda(factor(561)) == 80);
}

TEST_CASE("divisors and squarefree divisors") {
  auto f = factor(360);
  auto divs = divisors(f);
  CHECK(divs.size() == 24);
  CHECK(divs.front() == 1);
  CHECK(divs.back() == 360);
  CHECK(std::is_sorted(divs.begin(), divs.end()));

  auto sq = squarefree_divisors(f);
  CHECK(sq.size() == 8);  // subsets of {2, 3, 5}
  int mu_sum = 0;
  for (auto [d, mu] : sq) {
    CHECK(f.value % d == 0);
    mu_sum += mu;
  }
  CHECK(mu_sum == 0);
}

TEST_CASE("cyclotomic values and factor_qn_minus_1") {
  CHECK(cyclotomic_value(1, 2) == 1);
  CHECK(cyclotomic_value(2, 2) == 3);
  CHECK(cyclotomic_value(4, 2) == 5);
  CHECK(cyclotomic_value(6, 2) == 3);
  CHECK(cyclotomic_value(105, 2) > 0);

  auto q2 = prime_power_from_q(2);
  auto f15 = factor_qn_minus_1(q2, 4);
  CHECK(f15.value == 15);
  REQUIRE(f15.factors.size() == 2);
  CHECK(f15.factors[0].prime == 3);
  CHECK(f15.factors[1].prime == 5);

  auto q3 = prime_power_from_q(3);
  auto f8 = factor_qn_minus_1(q3, 2);
  CHECK(f8.value == 8);
  REQUIRE(f8.factors.size() == 1);
  CHECK(f8.factors[0].prime == 2);
  CHECK(f8.factors[0].exponent == 3);

  auto f2047 = factor_qn_minus_1(q2, 11);
  REQUIRE(f2047.factors.size() == 2);
  CHECK(f2047.factors[0].prime == 23);
  CHECK(f2047.factors[1].prime == 89);

  // must agree with direct factorization across a range of (q, n)
  for (u64 qv : {2, 3, 4, 5, 9, 16, 25}) {
    auto q = prime_power_from_q(qv);
    for (u32 n = 1; n <= 12; ++n) {
      u128 target = checked_pow(qv, n) - 1;
      CHECK(factor_qn_minus_1(q, n) == factor(target));
    }
  }
}

TEST_CASE("mult_order examples and properties") {
  CHECK(mult_order(2, 7) == 3);
  CHECK(mult_order(2, 15) == 4);
  CHECK(mult_order(3, 80) == 4);
  CHECK(mult_order(2, 1) == 1);
  CHECK_THROWS_AS(mult_order(2, 6), InvalidArgument);
  CHECK_THROWS_AS(mult_order(3, 0), InvalidArgument);

  for (u64 p : {2, 3, 5, 7, 11}) {
    for (u64 m = 1; m <= 400; ++m) {
      if (std::gcd(p, m) != 1) continue;
      u128 ord = mult_order(p, m);
      CHECK(ord == brute_force_order(p, m));
      u128 lambda = carmichael_lambda(factor(m));
      CHECK(lambda % ord == 0);
      if (m > 1) {
        CHECK(pow_mod(p, ord, m) == 1);
        for (const auto& e : factor(ord).factors)
          CHECK(pow_mod(p, static_cast<u128>(ord / e.prime), m) != 1);
      }
    }
  }
}

TEST_CASE("mult_order lcm property over coprime moduli") {
  std::mt19937_64 gen(7);
  int done = 0;
  while (done < 100) {
    u64 m1 = gen() % 300 + 1;
    u64 m2 = gen() % 300 + 1;
    if (std::gcd(m1, m2) != 1) continue;
    u64 p = 2;
    if (m1 % p == 0 || m2 % p == 0) p = 3;
    if (m1 % p == 0 || m2 % p == 0) continue;
    u128 lhs = mult_order(p, static_cast<u128>(m1) * m2);
    u128 rhs = checked_lcm(mult_order(p, m1), mult_order(p, m2));
    CHECK(lhs == rhs);
    ++done;
  }
}

TEST_CASE("rho examples and multiplicativity") {
  CHECK(rho_count(2, 8) == 4);
  CHECK(rho_count(4, 13) == 4);
  CHECK(rho_count(1, 97) == 1);
  CHECK(rho_count(1, 1) == 1);
  CHECK_THROWS_AS(rho_count(2, 0), InvalidArgument);

  std::mt19937_64 gen(11);
  int done = 0;
  while (done < 150) {
    u64 m1 = gen() % 1000 + 1;
    u64 m2 = gen() % 1000 + 1;
    u32 n = static_cast<u32>(gen() % 12 + 1);
    if (std::gcd(m1, m2) != 1) continue;
    CHECK(rho_count(n, static_cast<u128>(m1) * m2) ==
          checked_mul(rho_count(n, m1), rho_count(n, m2)));
    ++done;
  }
}

TEST_CASE("rho at primes is gcd(p-1, n)") {
  for (u64 p : primes_up_to(500))
    for (u32 n = 1; n <= 24; ++n)
      CHECK(rho_count(n, p) == gcd128(p - 1, n));
}

TEST_CASE("prime power enumeration") {
  auto e10 = enumerate_prime_powers(10);
  CHECK(e10.count == 7);
  std::vector<u64> expected{2, 3, 4, 5, 7, 8, 9};
  REQUIRE(e10.entries.size() == 7);
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(e10.entries[i].q == expected[i]);

  CHECK(enumerate_prime_powers(2).count == 1);
  CHECK(enumerate_prime_powers(1.5).count == 0);
  CHECK(enumerate_prime_powers(100).count == 35);
}

TEST_CASE("Q(x) equals sum of pi(x^(1/k))") {
  for (double x : {100.0, 1000.0, 50000.0}) {
    auto primes = primes_up_to(static_cast<u64>(x));
    u64 expected = 0;
    for (u32 k = 1; static_cast<double>(1ull << k) <= 2 * x; ++k) {
      // largest integer b with b^k <= x, found without floating error
      u64 bound = 1;
      while (true) {
        u64 next = bound + 1;
        double powed = std::pow(static_cast<double>(next), static_cast<double>(k));
        if (powed > x + 0.5) break;
        bound = next;
      }
      if (bound < 2) break;
      expected += static_cast<u64>(std::count_if(
          primes.begin(), primes.end(), [&](u64 p) { return p <= bound; }));
    }
    CHECK(enumerate_prime_powers(x).count == expected);
  }
}

TEST_CASE("gcd(a,b) = sum of phi over common divisors, a,b <= 200") {
  auto t = sieve_multiplicative(200);
  for (u64 a = 1; a <= 200; ++a)
    for (u64 b = 1; b <= 200; ++b) {
      u64 sum = 0;
      for (u64 d = 1; d <= std::min(a, b); ++d)
        if (a % d == 0 && b % d == 0) sum += t.phi[d];
      CHECK(sum == std::gcd(a, b));
    }
}

TEST_CASE("prime power construction and recognition") {
  auto pp = make_prime_power(3, 4);
  CHECK(pp.q == 81);
  CHECK_THROWS_AS(make_prime_power(6, 2), InvalidArgument);
  CHECK_THROWS_AS(make_prime_power(2, 0), InvalidArgument);

  auto r = prime_power_from_q(128);
  CHECK(r.p == 2);
  CHECK(r.r == 7);
  CHECK_THROWS_AS(prime_power_from_q(12), InvalidArgument);
  CHECK_THROWS_AS(prime_power_from_q(1), InvalidArgument);
}

TEST_CASE("u128 parsing and printing round-trip") {
  CHECK(to_string(static_cast<u128>(0)) == "0");
  CHECK(to_string(u128_max) == "340282366920938463463374607431768211455");
  CHECK(parse_u128("340282366920938463463374607431768211455") == u128_max);
  CHECK_FALSE(parse_u128("340282366920938463463374607431768211456").has_value());
  CHECK_FALSE(parse_u128("").has_value());
  CHECK_FALSE(parse_u128("12a").has_value());
  std::mt19937_64 gen(3);
  for (int i = 0; i < 100; ++i) {
    u128 v = (static_cast<u128>(gen()) << 64) | gen();
    CHECK(parse_u128(to_string(v)) == v);
  }
}

TEST_CASE("mul_mod and pow_mod against wide reference") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 200; ++i) {
    u64 a = gen(), b = gen(), m = gen() | 1;
    u128 expect = static_cast<u128>(a % m) * (b % m) % m;
    CHECK(mul_mod(a, b, m) == expect);
  }
  // big-modulus path: (m - 1)^2 mod m == 1
  u128 m = (static_cast<u128>(1) << 100) + 7;
  CHECK(mul_mod(m - 1, m - 1, m) == 1);
  CHECK(pow_mod(m - 1, 2, m) == 1);
  CHECK(pow_mod(5, 0, m) == 1);
  CHECK(pow_mod(5, 1, 1) == 0);
}

TEST_CASE("primality above 2^64: more knowns") {
  const u128 two64 = static_cast<u128>(1) << 64;
  CHECK(is_prime(two64 + 13));  // first prime past 2^64
  CHECK_FALSE(is_prime(two64 + 1));
  // products of large primes
  u128 p1 = 18446744073709551557ull;
  u128 p2 = 18446744073709551533ull;  // also prime
  CHECK(is_prime(p2));
  CHECK_FALSE(is_prime(p1 * p2));
  CHECK_FALSE(is_prime(p1 * p1));  // odd perfect square above 2^128/2^64
  CHECK_FALSE(is_prime(p1 * 3));
}

TEST_CASE("wide modular arithmetic properties") {
  std::mt19937_64 gen(23);
  const u128 m = ((static_cast<u128>(1) << 89) - 1);  // prime modulus
  for (int i = 0; i < 50; ++i) {
    u128 a = ((static_cast<u128>(gen()) << 64) | gen()) % m;
    u128 b = ((static_cast<u128>(gen()) << 64) | gen()) % m;
    u128 c = ((static_cast<u128>(gen()) << 64) | gen()) % m;
    CHECK(mul_mod(a, b, m) == mul_mod(b, a, m));
    CHECK(mul_mod(a, add_mod(b, c, m), m) ==
          add_mod(mul_mod(a, b, m), mul_mod(a, c, m), m));
    if (a != 0) CHECK(pow_mod(a, m - 1, m) == 1);  // Fermat
  }
}

TEST_CASE("rational ordering matches long-double ordering away from ties") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 300; ++i) {
    i64 n1 = static_cast<i64>(gen() % 2000) - 1000;
    i64 n2 = static_cast<i64>(gen() % 2000) - 1000;
    u64 d1 = gen() % 999 + 1, d2 = gen() % 999 + 1;
    auto a = Rational::make(n1, d1);
    auto b = Rational::make(n2, d2);
    double fa = a.to_double(), fb = b.to_double();
    if (fa < fb) CHECK(a < b);
    if (fb < fa) CHECK(b < a);
    if (a == b) CHECK(fa == fb);
  }
  // exact ties across distinct representations
  CHECK_FALSE(Rational::make(2, 4) == Rational::make(-3, 6));
  CHECK(Rational::make(2, 4) == Rational::make(3, 6));
  CHECK(Rational::make(-2, 4) == Rational::make(-3, 6));
  CHECK(Rational::make(-1, 2) < Rational::make(1, 3));
}

TEST_CASE("factorization cache load/save and corruption handling") {
  std::string path = "glq_test_cache.txt";
  {
    std::ofstream out(path);
    out << "24 2 3 3 1\n";
    out << "garbage line\n";
    out << "15 5 1 3 1\n";  // primes out of order -> reject
    out << "10 2 1 7 1\n";  // wrong product -> reject
    out << "2047 23 1 89 1\n";
  }
  FactorCache cache;
  std::vector<std::string> warnings;
  std::size_t accepted =
      cache.load(path, [&](const std::string& w) { warnings.push_back(w); });
  CHECK(accepted == 2);
  CHECK(warnings.size() == 3);
  auto hit = cache.lookup(2047);
  REQUIRE(hit.has_value());
  CHECK(hit->factors[0].prime == 23);
  CHECK_FALSE(cache.lookup(15).has_value());

  cache.save(path);
  FactorCache reloaded;
  std::size_t again = reloaded.load(path, [](const std::string&) {});
  CHECK(again == 2);
  std::remove(path.c_str());
}
