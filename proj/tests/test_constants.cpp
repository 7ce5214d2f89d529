#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glq/constants.hpp"
#include "glq/error.hpp"
#include "glq/sieve.hpp"

using namespace glq;
using namespace glq::constants;

TEST_CASE("euler product single factor") {
  auto cv = euler_product_pn(1, 2);
  CHECK(cv.estimate == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cv.error_bound > 0);
  // interval must contain the converged value (Artin constant region)
  auto fine = euler_product_pn(1, 1'000'000);
  CHECK(cv.lower() <= fine.estimate);
  CHECK(fine.estimate <= cv.upper());
}

TEST_CASE("n * p_n stays inside (0,1)") {
  for (u32 n = 1; n <= 24; ++n) {
    auto cv = euler_product_pn(n, 1000);
    CHECK(n * cv.estimate > 0.0);
    CHECK(n * cv.estimate < 1.0);
  }
}

TEST_CASE("euler product interval consistency and convergence ladder") {
  for (u32 n : {1u, 2u, 5u}) {
    double prev_diff = -1;
    int non_monotone = 0;
    CertifiedValue prev = euler_product_pn(n, 1000);
    for (u64 bound = 2000; bound <= 64000; bound *= 2) {
      auto next = euler_product_pn(n, bound);
      CHECK(prev.intersects(next));
      double diff = std::fabs(next.estimate - prev.estimate);
      if (prev_diff >= 0 && diff > prev_diff) ++non_monotone;
      prev_diff = diff;
      prev = next;
    }
    CHECK(non_monotone <= 1);
  }
}

TEST_CASE("grouped series at K=1 for p=2 is exactly 1") {
  auto cv = series_P_grouped(2, 1, 1);
  CHECK(cv.estimate == 1.0);
  CHECK(cv.error_bound > 0);
}

TEST_CASE("grouped series K=4 matches the exact rational") {
  auto detailed = series_P_grouped_detailed(2, 1, 4);
  // 1 - 1/6 - 1/21 - 1/30 = 79/105
  CHECK(detailed.value.estimate ==
        doctest::Approx(79.0 / 105.0).epsilon(1e-15));
  REQUIRE(detailed.terms.size() == 4);
  CHECK(detailed.terms[0].inner_sum == Rational{1, 1});
  CHECK(detailed.terms[0].support == std::vector<u128>{1});
  CHECK(detailed.terms[1].inner_sum == Rational::make(-1, 3));
  CHECK(detailed.terms[1].support == std::vector<u128>{3});
  CHECK(detailed.terms[2].inner_sum == Rational::make(-1, 7));
  CHECK(detailed.terms[2].support == std::vector<u128>{7});
  // k=4: m in {5, 15}: -1/5 + 1/15 = -2/15
  CHECK(detailed.terms[3].inner_sum == Rational::make(-2, 15));
  CHECK(detailed.terms[3].support == std::vector<u128>{5, 15});
}

TEST_CASE("grouped series for p=3: empty order class contributes zero") {
  auto k1 = series_P_grouped(3, 1, 1);
  auto k2 = series_P_grouped(3, 1, 2);
  CHECK(k1.estimate == k2.estimate);
  CHECK(k1.estimate == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("inner sum denominators divide p^k - 1") {
  auto detailed = series_P_grouped_detailed(2, 1, 20);
  for (const auto& term : detailed.terms) {
    u128 nk = checked_pow(2, term.k) - 1;
    CHECK(nk % term.inner_sum.den == 0);
  }
}

TEST_CASE("support completeness against brute-force scan, p=2, k <= 12") {
  auto detailed = series_P_grouped_detailed(2, 1, 12);
  auto tables = arith::sieve_multiplicative(4096);
  std::vector<std::vector<u128>> expected(13);
  for (u64 m = 1; m <= 4095; ++m) {
    if (m % 2 == 0 || tables.mu[m] == 0) continue;
    u128 ord = arith::mult_order(2, m);
    if (ord <= 12) expected[static_cast<size_t>(ord)].push_back(m);
  }
  for (const auto& term : detailed.terms) {
    CHECK(term.support == expected[term.k]);
  }
}

TEST_CASE("grouped series estimates converge along a doubling ladder") {
  double prev_est = series_P_grouped(2, 1, 4).estimate;
  double prev_diff = -1;
  int non_monotone = 0;
  for (u32 k = 8; k <= 64; k *= 2) {
    double est = series_P_grouped(2, 1, k).estimate;
    double diff = std::fabs(est - prev_est);
    if (prev_diff >= 0 && diff > prev_diff) ++non_monotone;
    prev_diff = diff;
    prev_est = est;
  }
  CHECK(non_monotone <= 1);  // sign oscillation allows one step
}

TEST_CASE("grouped series interval consistency") {
  auto k10 = series_P_grouped(2, 1, 10);
  auto k20 = series_P_grouped(2, 1, 20);
  auto k40 = series_P_grouped(2, 1, 40);
  CHECK(k10.intersects(k20));
  CHECK(k20.intersects(k40));
  for (u32 r : {2u, 3u, 6u}) {
    auto a = series_P_grouped(2, r, 16);
    auto b = series_P_grouped(2, r, 32);
    CHECK(a.intersects(b));
  }
}

TEST_CASE("direct series small cases") {
  CHECK(series_P_direct(2, 1, 1) == 1.0);
  CHECK(series_P_direct(2, 1, 3) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("direct series lies within the grouped certified interval") {
  auto grouped = series_P_grouped(2, 1, 40);
  double direct = series_P_direct(2, 1, 20'000);
  CHECK(grouped.lower() <= direct);
  CHECK(direct <= grouped.upper());
}

TEST_CASE("direct series is worker-invariant") {
  double serial = series_P_direct(2, 3, 30'000, 1);
  double parallel = series_P_direct(2, 3, 30'000, 4);
  CHECK(serial == parallel);
}

TEST_CASE("direct series partial sums: absolute-convergence self-check") {
  const u64 m_small = 2000, m_large = 4000;
  const u32 r = 3;
  double s1 = series_P_direct(2, r, m_small);
  double s2 = series_P_direct(2, r, m_large);
  auto tables = arith::sieve_multiplicative(m_large);
  double tail_bound = 0;
  for (u64 m = m_small + 1; m <= m_large; ++m) {
    if (m % 2 == 0 || tables.mu[m] == 0) continue;
    tail_bound +=
        static_cast<double>(r) /
        (static_cast<double>(m) *
         static_cast<double>(static_cast<u64>(arith::mult_order(2, m))));
  }
  CHECK(std::fabs(s2 - s1) <= tail_bound + 1e-12);
}

TEST_CASE("default truncations keep p^K in range") {
  CHECK(default_series_truncation(2) == 64);
  u32 k3 = default_series_truncation(3);
  CHECK(k3 >= 64);
  CHECK(checked_pow(3, k3) > 0);  // no throw: still inside 128 bits
  CHECK(default_series_truncation(1000003) >= 2);
}

TEST_CASE("bad arguments are rejected") {
  CHECK_THROWS_AS(euler_product_pn(0, 100), InvalidArgument);
  CHECK_THROWS_AS(euler_product_pn(1, 1), InvalidArgument);
  CHECK_THROWS_AS(series_P_grouped(4, 1, 5), InvalidArgument);
  CHECK_THROWS_AS(series_P_grouped(2, 0, 5), InvalidArgument);
  CHECK_THROWS_AS(series_P_direct(9, 1, 100), InvalidArgument);
}
