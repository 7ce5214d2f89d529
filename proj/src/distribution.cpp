#include "glq/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "glq/error.hpp"

namespace glq::distribution {

namespace {

Rational scale_by(const Rational& v, u32 n) {
  if (n == 1) return v;
  auto scaled = Rational::mul(v, Rational{static_cast<i128>(n), 1});
  if (!scaled) throw RangeError("ecdf: rescaled density overflows 128 bits");
  return *scaled;
}

ECDF build_ecdf(std::vector<Rational> raw, bool scale_by_index, u32 fixed_n,
                std::string meta) {
  ECDF e;
  e.sample.reserve(raw.size());
  for (u64 i = 0; i < raw.size(); ++i)
    e.sample.push_back(
        scale_by(raw[i], scale_by_index ? static_cast<u32>(i + 1) : fixed_n));
  std::sort(e.sample.begin(), e.sample.end());
  e.sample_d.reserve(e.sample.size());
  for (const auto& v : e.sample) e.sample_d.push_back(v.to_double());
  e.size = e.sample.size();
  e.meta = std::move(meta);
  return e;
}

std::string decimal15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

double ECDF::evaluate(double z) const {
  auto it = std::upper_bound(sample_d.begin(), sample_d.end(), z);
  return static_cast<double>(it - sample_d.begin()) / static_cast<double>(size);
}

ECDF ecdf_prime_powers(u32 n, double x, const EnsembleConfig& cfg) {
  auto values = ensembles::density_values_prime_powers(n, x, cfg);
  return build_ecdf(std::move(values), false, n,
                    "mode=prime_powers n=" + std::to_string(n) + " x=" +
                        decimal15(x) + " values=n*p_n(q)");
}

ECDF ecdf_extensions(u128 p, u32 n, double x, const EnsembleConfig& cfg) {
  auto values = ensembles::density_values_extensions(p, n, x, cfg);
  return build_ecdf(std::move(values), false, n,
                    "mode=extensions p=" + to_string(p) + " n=" +
                        std::to_string(n) + " x=" + decimal15(x) +
                        " values=n*p_n(p^r)");
}

ECDF ecdf_ranks(const arith::PrimePower& q, double x, const EnsembleConfig& cfg) {
  auto values = ensembles::density_values_ranks(q, x, cfg);
  return build_ecdf(std::move(values), true, 1,
                    "mode=ranks q=" + to_string(q.q) + " x=" + decimal15(x) +
                        " values=n*p_n(q)");
}

double kolmogorov_distance(const ECDF& a, const ECDF& b) {
  if (a.size == 0 || b.size == 0)
    throw InvalidArgument("kolmogorov_distance: empty ECDF");
  // Walk the merged jump points; the supremum is attained at one of them.
  // Counts are exact integers, so the comparison is exact.
  u64 i = 0, j = 0;
  u128 best_num = 0;
  const u128 na = a.size, nb = b.size;
  while (i < a.sample.size() || j < b.sample.size()) {
    bool take_a, take_b;
    if (i == a.sample.size()) {
      take_a = false;
      take_b = true;
    } else if (j == b.sample.size()) {
      take_a = true;
      take_b = false;
    } else if (a.sample[i] == b.sample[j]) {
      take_a = take_b = true;
    } else if (a.sample[i] < b.sample[j]) {
      take_a = true;
      take_b = false;
    } else {
      take_a = false;
      take_b = true;
    }
    if (take_a) {
      const Rational& v = a.sample[i];
      while (i < a.sample.size() && a.sample[i] == v) ++i;
    }
    if (take_b) {
      const Rational& v = b.sample[j];
      while (j < b.sample.size() && b.sample[j] == v) ++j;
    }
    u128 lhs = static_cast<u128>(i) * nb;
    u128 rhs = static_cast<u128>(j) * na;
    u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    best_num = std::max(best_num, diff);
  }
  return static_cast<double>(static_cast<long double>(best_num) /
                             (static_cast<long double>(na) *
                              static_cast<long double>(nb)));
}

void write_ecdf_csv(std::ostream& out, const ECDF& ecdf, bool decimals) {
  out << "z,F\n";
  u64 count = 0;
  for (u64 i = 0; i < ecdf.sample.size(); ++i) {
    ++count;
    bool last_of_run =
        i + 1 == ecdf.sample.size() || !(ecdf.sample[i + 1] == ecdf.sample[i]);
    if (!last_of_run) continue;
    if (decimals)
      out << decimal15(ecdf.sample_d[i]);
    else
      out << ecdf.sample[i].str();
    out << ',';
    if (decimals)
      out << decimal15(static_cast<double>(count) / static_cast<double>(ecdf.size));
    else
      out << to_string(static_cast<u128>(count)) << '/'
          << to_string(static_cast<u128>(ecdf.size));
    out << '\n';
  }
}

void write_ladder_line(std::ostream& out, const LadderDiagnostic& d) {
  out << d.mode << ',' << d.params << ',' << decimal15(d.x1) << ','
      << decimal15(d.x2) << ',' << decimal15(d.distance) << '\n';
}

}  // namespace glq::distribution
