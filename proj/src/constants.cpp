#include "glq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glq/error.hpp"
#include "glq/sieve.hpp"
#include "glq/streaming_sum.hpp"

namespace glq::constants {

namespace {

constexpr double kEulerGamma = std::numbers::egamma;
// Robin's unconditional bound sigma(N)/N <= e^gamma*loglog N + 0.6483/loglog N
// holds for all N >= 3.
constexpr double kRobinConstant = 0.6483;

double robin_sigma_over_n(long double n) {
  long double ll = logl(logl(n));
  return static_cast<double>(expl(kEulerGamma) * ll + kRobinConstant / ll);
}

}  // namespace

CertifiedValue euler_product_pn(u32 n, u64 prime_bound) {
  if (n == 0) throw InvalidArgument("euler_product_pn: n must be >= 1");
  if (prime_bound < 2)
    throw InvalidArgument("euler_product_pn: prime bound must be >= 2");

  long double product = 1.0L;
  for (u64 p : arith::primes_up_to(prime_bound)) {
    u64 g = static_cast<u64>(gcd128(p - 1, n));
    product *= 1.0L - static_cast<long double>(g) /
                          (static_cast<long double>(p) * (p - 1));
  }
  long double estimate = product / n;

  // Tail: the true value is estimate * exp(-S) with
  //   S = sum_{p > B} -log(1 - t_p),  t_p = gcd(p-1,n)/(p(p-1)) <= 1/p <= 1/3,
  // so -log(1-t_p) <= 1.5*t_p, and t_p <= n/(p(p-1)) gives
  //   S <= 1.5*n*sum_{m > B} 1/(m(m-1)) = 1.5*n/B.
  long double s_max = 1.5L * n / static_cast<long double>(prime_bound);
  long double tail = estimate * (1.0L - expl(-s_max));
  long double slack = fabsl(estimate) * 1e-12L;  // rounding of the partial product

  CertifiedValue cv;
  cv.estimate = static_cast<double>(estimate);
  cv.error_bound = static_cast<double>(tail + slack);
  cv.truncation = prime_bound;
  cv.meta =
      "truncated Euler product over primes <= B; tail of the log-product "
      "bounded by -log(1-t) <= 1.5t (0 <= t <= 1/3), gcd(p-1,n) <= n and "
      "sum_{m>B} 1/(m(m-1)) = 1/B, so |log tail| <= 1.5n/B; interval "
      "[est*exp(-1.5n/B), est] widened by 1e-12 relative rounding slack";
  return cv;
}

u32 default_series_truncation(u128 p) {
  if (p == 2) return 64;
  u32 k = 0;
  u128 power = 1;
  while (power <= (u128_max >> 1) / p) {
    power *= p;
    ++k;
  }
  return std::max<u32>(k, 2);
}

GroupedSeries series_P_grouped_detailed(u128 p, u32 r, u32 K) {
  if (!arith::is_prime(p))
    throw InvalidArgument("series_P: p must be prime");
  if (r == 0 || K == 0)
    throw InvalidArgument("series_P: r and K must be >= 1");

  arith::PrimePower pp;
  pp.p = p;
  pp.r = 1;
  pp.q = p;

  GroupedSeries out;
  StreamingSum sum;

  for (u32 k = 1; k <= K; ++k) {
    u128 nk;
    arith::Factorization fk;
    try {
      fk = arith::factor_qn_minus_1(pp, k);
      nk = fk.value;
    } catch (const FactorExhausted& e) {
      throw FactorExhausted("series_P: factorization exhausted at k = " +
                            std::to_string(k) + " (" + e.what() + ")");
    }

    // Primes of k, for the order test: ord_p(m) = k iff m | p^k - 1 and
    // m does not divide p^(k/l) - 1 for any prime l | k.
    std::vector<u32> k_primes;
    {
      u32 rest = k;
      for (u32 d = 2; d * d <= rest; ++d)
        if (rest % d == 0) {
          k_primes.push_back(d);
          while (rest % d == 0) rest /= d;
        }
      if (rest > 1) k_primes.push_back(rest);
    }

    OrderGroupedTerm term;
    term.k = k;
    i128 numerator = 0;
    for (const auto& [m, mu] : arith::squarefree_divisors(fk)) {
      bool order_is_k = true;
      if (m == 1) {
        order_is_k = (k == 1);
      } else {
        for (u32 l : k_primes)
          if (pow_mod(p, k / l, m) == 1) {
            order_is_k = false;
            break;
          }
      }
      if (!order_is_k) continue;
      term.support.push_back(m);
      i128 contribution = static_cast<i128>(nk / m);
      if (mu < 0) contribution = -contribution;
      if (add_overflow_i(numerator, contribution, numerator))
        throw RangeError("series_P: inner sum overflow at k = " +
                         std::to_string(k));
    }
    std::sort(term.support.begin(), term.support.end());
    term.inner_sum = Rational::make(numerator, nk);

    Rational weight = Rational::from_ratio(gcd128(k, r), k);
    if (auto exact_term = Rational::mul(weight, term.inner_sum))
      sum.push(*exact_term);
    else
      sum.push_float(static_cast<long double>(weight.num) /
                     static_cast<long double>(weight.den) *
                     static_cast<long double>(term.inner_sum.num) /
                     static_cast<long double>(term.inner_sum.den));
    out.terms.push_back(std::move(term));
  }

  // Certified tail. Write T(k) = sum over m coprime to p with ord_p(m) = k of
  // 1/m; then the dropped mass is at most r * sum_{k>K} T(k)/k.
  // Every m with ord_p(m) <= x divides E = prod_{k<=x}(p^k - 1), so the
  // cumulative sum C(x) = sum_{k<=x} T(k) is at most sigma(E)/E, bounded by
  // Robin's inequality with log log E <= log(x^2 log p) (E <= p^(x^2)) and
  // log log E >= log((x-1) log p) (E >= p^(x-1)). Abel summation then gives
  //   sum_{k>K0} T(k)/k <= 2 e^gamma (log K0 + 1)/K0
  //                        + (e^gamma loglog p + 0.6483/log(K0 log p))/(K0+1)
  // for K0 >= 3; orders K < k <= K0 are covered term-by-term via
  // T(k) <= sigma(p^k - 1)/(p^k - 1).
  const u32 k0 = std::max<u32>(K, 3);
  long double bound = 0;
  for (u32 k = K + 1; k <= k0; ++k) {
    long double nk = powl(static_cast<long double>(p), k) - 1.0L;
    bound += robin_sigma_over_n(nk) / k;
  }
  const long double log_p = logl(static_cast<long double>(p));
  const long double eg = expl(static_cast<long double>(kEulerGamma));
  bound += 2.0L * eg * (logl(static_cast<long double>(k0)) + 1.0L) / k0;
  bound += (eg * logl(log_p) +
            static_cast<long double>(kRobinConstant) / logl(k0 * log_p)) /
           (k0 + 1);
  bound *= r;
  bound += 1e-12L * (1.0L + fabsl(sum.value()));  // accumulation rounding

  CertifiedValue cv;
  cv.estimate = static_cast<double>(sum.value());
  cv.error_bound = static_cast<double>(bound);
  cv.truncation = K;
  cv.meta =
      "order-grouped partial sum with exact rational inner sums over the "
      "squarefree divisors of p^k-1 of order exactly k; tail bound: every m "
      "of order <= x divides E = prod_{k<=x}(p^k-1), sigma(E)/E <= "
      "e^g*loglog E + 0.6483/loglog E (Robin, E >= 3), loglog E bracketed by "
      "log((x-1)log p) and log(x^2 log p); Abel summation over k > K with "
      "gcd(k,r) <= r and sum log k/k^2 <= (log K+1)/K; 1e-12 rounding slack";
  out.value = cv;
  return out;
}

CertifiedValue series_P_grouped(u128 p, u32 r, u32 K) {
  return series_P_grouped_detailed(p, r, K).value;
}

double series_P_direct(u128 p, u32 r, u64 M, int workers) {
  if (!arith::is_prime(p))
    throw InvalidArgument("series_P_direct: p must be prime");
  if (r == 0) throw InvalidArgument("series_P_direct: r must be >= 1");
  if (M == 0) return 0;

  const auto tables = arith::sieve_multiplicative(M);

  auto factor_from_tables = [&tables](u64 x) {
    arith::Factorization f;
    f.value = x;
    while (x > 1) {
      u32 sp = tables.spf[x];
      u32 e = 0;
      while (x % sp == 0) {
        x /= sp;
        ++e;
      }
      f.factors.push_back({sp, e});
    }
    return f;
  };

  std::vector<long double> terms(M + 1, 0.0L);
  terms[1] = 1.0L;  // m = 1: mu = 1, ord_p(1) = 1, gcd(1, r) = 1

  auto fill = [&](u64 m) {
    if (tables.mu[m] == 0) return;
    if (p <= m && m % static_cast<u64>(p) == 0) return;
    arith::Factorization fm = factor_from_tables(m);
    u128 lambda = arith::carmichael_lambda(fm);
    arith::Factorization fl = factor_from_tables(static_cast<u64>(lambda));
    u128 order = lambda;
    for (const auto& e : fl.factors) {
      for (u32 i = 0; i < e.exponent; ++i) {
        if (order % e.prime != 0) break;
        u128 reduced = order / e.prime;
        if (pow_mod(p, reduced, m) == 1)
          order = reduced;
        else
          break;
      }
    }
    long double l = static_cast<long double>(order);
    long double g = static_cast<long double>(gcd128(order, r));
    terms[m] = static_cast<long double>(tables.mu[m]) / m * (g / l);
  };

#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic, 1024) num_threads(workers)
    for (u64 m = 2; m <= M; ++m) fill(m);
  } else {
    for (u64 m = 2; m <= M; ++m) fill(m);
  }
#else
  (void)workers;
  for (u64 m = 2; m <= M; ++m) fill(m);
#endif

  // Fixed-order compensated reduction keeps the result worker-independent.
  long double sum = 0, comp = 0;
  for (u64 m = 1; m <= M; ++m) {
    long double y = terms[m] - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

}  // namespace glq::constants
