#include "glq/factor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "glq/error.hpp"
#include "glq/sieve.hpp"

namespace glq::arith {

namespace {

u128 sub_mod(u128 a, u128 b, u128 m) { return a >= b ? a - b : a + (m - b); }

// (x / 2) mod m for odd m; avoids the overflow in (x + m) / 2.
u128 half_mod(u128 x, u128 m) {
  if ((x & 1) == 0) return x >> 1;
  return (x >> 1) + (m >> 1) + 1;
}

u128 isqrt128(u128 n) {
  if (n == 0) return 0;
  u128 r = static_cast<u128>(sqrtl(static_cast<long double>(n)));
  const u128 max_root = (static_cast<u128>(1) << 64) - 1;
  if (r > max_root) r = max_root;
  while (r != 0 && r * r > n) --r;
  while (r < max_root && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(u128 n) {
  u128 r = isqrt128(n);
  return r * r == n;
}

// Floor of n^(1/k), exact.
u128 iroot(u128 n, u32 k) {
  if (k == 1 || n <= 1) return n;
  long double guess = powl(static_cast<long double>(n), 1.0L / k);
  u128 r = static_cast<u128>(guess);
  auto pow_le = [&](u128 base) {
    u128 acc = 1;
    for (u32 i = 0; i < k; ++i) {
      if (mul_overflow(acc, base, acc)) return false;  // exceeded n for sure
      if (acc > n) return false;
    }
    return acc <= n;
  };
  while (r > 1 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

int jacobi(i128 a, u128 n) {
  i128 ni = static_cast<i128>(n);
  a %= ni;
  if (a < 0) a += ni;
  u128 x = static_cast<u128>(a);
  u128 m = n;
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      u128 r = m & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

bool miller_rabin(u128 n, const u128* bases, std::size_t count) {
  u128 d = n - 1;
  u32 s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::size_t i = 0; i < count; ++i) {
    u128 b = bases[i] % n;
    if (b == 0) continue;
    u128 x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (u32 r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Strong Lucas test with Selfridge parameters (P = 1, Q = (1 - D) / 4,
// D the first of 5, -7, 9, -11, ... with Jacobi(D|n) = -1).
bool strong_lucas(u128 n) {
  if (is_perfect_square(n)) return false;
  i128 d_param = 5;
  while (true) {
    int j = jacobi(d_param, n);
    if (j == 0) return false;  // shares a factor with n
    if (j == -1) break;
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
    if (d_param > 1000 || d_param < -1000)
      throw Error("strong_lucas: no discriminant found for non-square input");
  }
  u128 dm = d_param >= 0
                ? static_cast<u128>(d_param) % n
                : n - static_cast<u128>(-d_param) % n;
  i128 q_param = (1 - d_param) / 4;
  u128 q = q_param >= 0
               ? static_cast<u128>(q_param) % n
               : n - static_cast<u128>(-q_param) % n;

  u128 idx = n + 1;
  u32 s = 0;
  while ((idx & 1) == 0) {
    idx >>= 1;
    ++s;
  }

  // Ladder over the bits of the odd part, starting from U_1=1, V_1=P=1.
  int highest = 127;
  while (highest > 0 && ((idx >> highest) & 1) == 0) --highest;
  u128 u_val = 1, v_val = 1, qk = q;
  for (int bit = highest - 1; bit >= 0; --bit) {
    u_val = mul_mod(u_val, v_val, n);
    v_val = sub_mod(mul_mod(v_val, v_val, n), mul_mod(2, qk, n), n);
    qk = mul_mod(qk, qk, n);
    if ((idx >> bit) & 1) {
      u128 nu = half_mod(add_mod(u_val, v_val, n), n);
      u128 nv = half_mod(add_mod(mul_mod(dm, u_val, n), v_val, n), n);
      u_val = nu;
      v_val = nv;
      qk = mul_mod(qk, q, n);
    }
  }
  if (u_val == 0 || v_val == 0) return true;
  for (u32 r = 1; r < s; ++r) {
    v_val = sub_mod(mul_mod(v_val, v_val, n), mul_mod(2, qk, n), n);
    qk = mul_mod(qk, qk, n);
    if (v_val == 0) return true;
  }
  return false;
}

// Proven deterministic base set for n < 2^64.
constexpr u128 kBases64[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
// Fixed bases used above 2^64, combined with the strong Lucas test.
constexpr u128 kBases128[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

const std::vector<u64>& default_trial_primes() {
  static const std::vector<u64> primes = primes_up_to(FactorConfig{}.trial_bound);
  return primes;
}

// Deterministic Pollard rho (Brent variant) with a fixed increment schedule.
// Returns a nontrivial factor or throws FactorExhausted.
u128 pollard_brent(u128 n, const FactorConfig& cfg) {
  for (u32 round = 0; round < cfg.rho_rounds; ++round) {
    const u128 c = 1 + 2 * static_cast<u128>(round);
    auto step = [&](u128 y) { return add_mod(mul_mod(y, y, n), c % n, n); };

    u128 x = 2, y = 2, q = 1, g = 1, ys = y;
    u64 r = 1, iterations = 0;
    const u64 batch = 128;
    bool budget_hit = false;

    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += batch) {
        ys = y;
        u64 span = std::min(batch, r - k);
        for (u64 i = 0; i < span; ++i) {
          y = step(y);
          q = mul_mod(q, y > x ? y - x : x - y, n);
        }
        g = gcd128(q, n);
      }
      iterations += r;
      r <<= 1;
      if (iterations > cfg.rho_iteration_cap) {
        budget_hit = true;
        break;
      }
    }
    if (budget_hit) continue;
    if (g == n) {
      // Batch overshot; replay single steps from the saved point.
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = gcd128(ys > x ? ys - x : x - ys, n);
      }
    }
    if (g != n && g != 1) return g;
  }
  throw FactorExhausted("factorization exhausted: no split of " + to_string(n) +
                        " within the retry budget");
}

void factor_recursive(u128 n, u32 multiplicity, std::map<u128, u32>& out,
                      const FactorConfig& cfg) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += multiplicity;
    return;
  }
  // Perfect powers: n = b^k with k prime is enough, composite k telescopes.
  static constexpr u32 kPrimeExponents[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                            23, 29, 31, 37, 41, 43, 47, 53,
                                            59, 61, 67, 71, 73, 79, 83, 89,
                                            97, 101, 103, 107, 109, 113, 127};
  for (u32 k : kPrimeExponents) {
    if ((static_cast<u128>(1) << k) > n) break;
    u128 b = iroot(n, k);
    if (b > 1 && checked_pow(b, k) == n) {
      factor_recursive(b, multiplicity * k, out, cfg);
      return;
    }
  }
  u128 g = pollard_brent(n, cfg);
  factor_recursive(g, multiplicity, out, cfg);
  factor_recursive(n / g, multiplicity, out, cfg);
}

}  // namespace

u128 Factorization::product() const {
  u128 acc = 1;
  for (const auto& e : factors) acc = checked_mul(acc, checked_pow(e.prime, e.exponent));
  return acc;
}

bool Factorization::is_squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const FactorEntry& e) { return e.exponent == 1; });
}

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (u128 p : kBases128) {  // first twelve primes double as a wheel
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  if (n < (static_cast<u128>(1) << 64))
    return miller_rabin(n, kBases64, std::size(kBases64));
  return miller_rabin(n, kBases128, std::size(kBases128)) && strong_lucas(n);
}

Factorization factor(u128 n) { return factor(n, FactorConfig{}); }

Factorization factor(u128 n, const FactorConfig& cfg) {
  if (n == 0) throw InvalidArgument("factor: input must be positive");
  if (auto cached = factor_cache().lookup(n)) return *cached;

  const u128 original = n;
  std::map<u128, u32> found;

  const std::vector<u64>& primes = cfg.trial_bound == FactorConfig{}.trial_bound
                                       ? default_trial_primes()
                                       : primes_up_to(cfg.trial_bound);
  for (u64 p : primes) {
    if (static_cast<u128>(p) * p > n) break;
    if (n % p == 0) {
      u32 e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      found[p] = e;
    }
  }
  if (n > 1) {
    if (!primes.empty() &&
        static_cast<u128>(primes.back()) * primes.back() > n) {
      found[n] += 1;  // below the trial square, must be prime
    } else {
      factor_recursive(n, 1, found, cfg);
    }
  }

  Factorization result;
  result.value = original;
  result.factors.reserve(found.size());
  for (const auto& [p, e] : found) result.factors.push_back({p, e});
  if (result.product() != original)
    throw Error("factor: internal consistency check failed for " +
                to_string(original));
  factor_cache().insert(result);
  return result;
}

u128 euler_phi(const Factorization& f) {
  u128 r = f.value;
  for (const auto& e : f.factors) r = r / e.prime * (e.prime - 1);
  return r;
}

u128 carmichael_lambda(const Factorization& f) {
  u128 lam = 1;
  for (const auto& e : f.factors) {
    u128 local;
    if (e.prime == 2) {
      if (e.exponent == 1)
        local = 1;
      else if (e.exponent == 2)
        local = 2;
      else
        local = static_cast<u128>(1) << (e.exponent - 2);
    } else {
      local = checked_mul(checked_pow(e.prime, e.exponent - 1), e.prime - 1);
    }
    lam = checked_lcm(lam, local);
  }
  return lam;
}

std::vector<u128> divisors(const Factorization& f) {
  std::vector<u128> result{1};
  for (const auto& e : f.factors) {
    std::size_t base_count = result.size();
    u128 power = 1;
    for (u32 k = 1; k <= e.exponent; ++k) {
      power = checked_mul(power, e.prime);
      for (std::size_t i = 0; i < base_count; ++i)
        result.push_back(checked_mul(result[i], power));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::pair<u128, int>> squarefree_divisors(const Factorization& f) {
  const u32 w = f.omega();
  if (w >= 30)
    throw RangeError("squarefree_divisors: too many prime factors (" +
                     std::to_string(w) + ")");
  std::vector<std::pair<u128, int>> result;
  result.reserve(static_cast<std::size_t>(1) << w);
  for (u32 mask = 0; mask < (1u << w); ++mask) {
    u128 d = 1;
    int mu = 1;
    for (u32 i = 0; i < w; ++i) {
      if (mask & (1u << i)) {
        d = checked_mul(d, f.factors[i].prime);
        mu = -mu;
      }
    }
    result.emplace_back(d, mu);
  }
  return result;
}

namespace {

std::vector<i64> cyclotomic_coeffs(u32 d);

// Exact division of polynomials with integer coefficients (ascending order).
std::vector<i64> poly_div_exact(std::vector<i64> num, const std::vector<i64>& den) {
  std::vector<i64> quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    i64 lead = num[i + den.size() - 1];
    i64 c = lead / den.back();
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (i64 v : num)
    if (v != 0) throw Error("cyclotomic: nonzero remainder in exact division");
  return quot;
}

std::vector<i64> cyclotomic_coeffs_uncached(u32 d) {
  std::vector<i64> f(d + 1, 0);  // x^d - 1
  f[0] = -1;
  f[d] = 1;
  for (u32 e = 1; e < d; ++e)
    if (d % e == 0) f = poly_div_exact(std::move(f), cyclotomic_coeffs(e));
  return f;
}

std::vector<i64> cyclotomic_coeffs(u32 d) {
  static std::mutex mutex;
  static std::map<u32, std::vector<i64>> memo;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
  }
  auto coeffs = cyclotomic_coeffs_uncached(d);
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(d, std::move(coeffs)).first->second;
}

}  // namespace

u128 cyclotomic_value(u32 d, u128 x) {
  if (d == 0) throw InvalidArgument("cyclotomic_value: index must be positive");
  const auto coeffs = cyclotomic_coeffs(d);
  if (x > (u128_max >> 2)) throw RangeError("cyclotomic_value: argument too large");
  i128 xi = static_cast<i128>(x);
  i128 acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    if (mul_overflow_i(acc, xi, acc))
      throw RangeError("cyclotomic_value: intermediate overflow");
    if (add_overflow_i(acc, static_cast<i128>(coeffs[i]), acc))
      throw RangeError("cyclotomic_value: intermediate overflow");
  }
  if (acc < 0) throw Error("cyclotomic_value: negative value");
  return static_cast<u128>(acc);
}

std::optional<Factorization> FactorCache::lookup(u128 n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void FactorCache::insert(const Factorization& f) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (entries_.size() >= kMaxEntries) return;
  entries_.emplace(f.value, f);
}

std::size_t FactorCache::load(const std::string& path,
                              const std::function<void(const std::string&)>& warn) {
  std::ifstream in(path);
  if (!in) {
    warn("factor cache: cannot open " + path);
    return 0;
  }
  std::size_t accepted = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<u128> tokens;
    std::string tok;
    bool bad = false;
    while (ss >> tok) {
      auto v = parse_u128(tok);
      if (!v) {
        bad = true;
        break;
      }
      tokens.push_back(*v);
    }
    if (bad || tokens.empty() || tokens.size() % 2 == 0) {
      warn("factor cache: rejecting corrupt line " + std::to_string(lineno));
      continue;
    }
    Factorization f;
    f.value = tokens[0];
    u128 last_prime = 0;
    for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
      u128 p = tokens[i];
      u128 e = tokens[i + 1];
      if (p <= last_prime || e == 0 || e > 200 || !is_prime(p)) {
        bad = true;
        break;
      }
      last_prime = p;
      f.factors.push_back({p, static_cast<u32>(e)});
    }
    bool product_ok = false;
    if (!bad) {
      try {
        product_ok = f.product() == f.value;
      } catch (const Error&) {
        product_ok = false;
      }
    }
    if (bad || !product_ok) {
      warn("factor cache: rejecting corrupt line " + std::to_string(lineno));
      continue;
    }
    insert(f);
    ++accepted;
  }
  return accepted;
}

void FactorCache::save(const std::string& path) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path);
  if (!out) throw Error("factor cache: cannot write " + path);
  for (const auto& [n, f] : entries_) {
    out << to_string(n);
    for (const auto& e : f.factors)
      out << ' ' << to_string(e.prime) << ' ' << e.exponent;
    out << '\n';
  }
}

FactorCache::Stats FactorCache::stats() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return Stats{hits_, misses_, static_cast<u64>(entries_.size())};
}

FactorCache& factor_cache() {
  static FactorCache cache;
  return cache;
}

}  // namespace glq::arith
