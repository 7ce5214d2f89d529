#include "glq/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glq/error.hpp"
#include "glq/sieve.hpp"
#include "glq/streaming_sum.hpp"

namespace glq::ensembles {

namespace {

// Largest q keeping both q^n and the density denominator n*(q^n - 1)
// inside 128 bits.
u128 largest_safe_q(u32 n) {
  if (n <= 1) return u128_max;
  auto fits = [n](u128 q) {
    u128 acc = 1;
    for (u32 i = 0; i < n; ++i)
      if (mul_overflow(acc, q, acc)) return false;
    return acc - 1 <= u128_max / n;
  };
  u128 lo = 2, hi = u128_max;  // fits(lo), !fits(hi)
  while (hi - lo > 1) {
    u128 mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

template <typename Fn>
void parallel_fill(u64 count, int workers, const Fn& fn) {
#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
    for (u64 i = 0; i < count; ++i) fn(i);
    return;
  }
#else
  (void)workers;
#endif
  for (u64 i = 0; i < count; ++i) fn(i);
}

void report_progress(std::ostream* out, const char* what, u64 done, u64 total) {
  if (out == nullptr) return;
  *out << what << ": " << done << "/" << total << "\n";
}

constants::CertifiedValue scaled(constants::CertifiedValue cv, u32 divisor) {
  cv.estimate /= divisor;
  cv.error_bound /= divisor;
  cv.meta += "; scaled by 1/" + std::to_string(divisor);
  return cv;
}

AverageReport finish_report(AverageReport rep, const StreamingSum& sum,
                            double normalizer) {
  rep.raw_sum = static_cast<double>(sum.value());
  rep.exact_terms = sum.exact_terms();
  rep.empirical_mean = static_cast<double>(sum.value() / normalizer);
  rep.discrepancy = std::fabs(rep.empirical_mean - rep.theoretical.estimate);
  return rep;
}

}  // namespace

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::prime_powers: return "prime_powers";
    case Mode::extensions: return "extensions";
    case Mode::ranks: return "ranks";
  }
  return "?";
}

Mode mode_from_name(const std::string& name) {
  if (name == "prime_powers" || name == "prime-powers") return Mode::prime_powers;
  if (name == "extensions") return Mode::extensions;
  if (name == "ranks") return Mode::ranks;
  throw InvalidArgument("unknown ensemble mode: " + name);
}

std::string AverageReport::params_str() const {
  switch (mode) {
    case Mode::prime_powers: return "n=" + std::to_string(n);
    case Mode::extensions: return "p=" + to_string(p) + ";n=" + std::to_string(n);
    case Mode::ranks: return "p=" + to_string(p) + ";r=" + std::to_string(r);
  }
  return "?";
}

std::vector<Rational> density_values_prime_powers(u32 n, double x,
                                                  const EnsembleConfig& cfg) {
  if (n == 0) throw InvalidArgument("ensemble: rank must be >= 1");
  if (!(x >= 2)) throw InvalidArgument("ensemble: x must be >= 2");
  auto enumeration = arith::enumerate_prime_powers(x);
  const auto& qs = enumeration.entries;
  std::vector<Rational> values(qs.size());

  if (n == 1) {
    // phi(q - 1)/(q - 1) straight from the sieve tables.
    auto tables = arith::sieve_multiplicative(static_cast<u64>(x));
    parallel_fill(qs.size(), cfg.workers, [&](u64 i) {
      u64 m = static_cast<u64>(qs[i].q) - 1;
      values[i] = m == 0 ? Rational{1, 1}
                         : Rational::from_ratio(tables.phi[m], m);
    });
    return values;
  }

  parallel_fill(qs.size(), cfg.workers, [&](u64 i) {
    auto spec = singer::make_group_spec(n, qs[i]);
    values[i] = singer::density(spec).density;
  });
  return values;
}

std::vector<Rational> density_values_extensions(u128 p, u32 n, double x,
                                                const EnsembleConfig& cfg) {
  if (n == 0) throw InvalidArgument("ensemble: rank must be >= 1");
  if (!(x >= 1)) throw InvalidArgument("ensemble: x must be >= 1");
  if (!arith::is_prime(p)) throw InvalidArgument("ensemble: p must be prime");
  const u64 r_max = static_cast<u64>(x);
  {
    // Hard range check up front so the error names the offending power.
    u128 acc = 1;
    for (u64 i = 0; i < static_cast<u64>(n) * r_max; ++i)
      if (mul_overflow(acc, p, acc))
        throw RangeError("ensemble extensions: p^(n*r) exceeds 2^128 at r=" +
                         std::to_string(r_max));
  }
  std::vector<Rational> values(r_max);
  parallel_fill(r_max, cfg.workers, [&](u64 i) {
    auto q = arith::make_prime_power(p, static_cast<u32>(i + 1));
    auto spec = singer::make_group_spec(n, q);
    values[i] = singer::density(spec).density;
  });
  return values;
}

std::vector<Rational> density_values_ranks(const arith::PrimePower& q, double x,
                                           const EnsembleConfig& cfg) {
  if (!(x >= 1)) throw InvalidArgument("ensemble: x must be >= 1");
  const u64 n_max = static_cast<u64>(x);
  {
    u128 acc = 1;
    for (u64 i = 0; i < n_max; ++i)
      if (mul_overflow(acc, q.q, acc))
        throw RangeError("ensemble ranks: q^n exceeds 2^128 at n=" +
                         std::to_string(n_max));
  }
  std::vector<Rational> values(n_max);
  parallel_fill(n_max, cfg.workers, [&](u64 i) {
    auto spec = singer::make_group_spec(static_cast<u32>(i + 1), q);
    values[i] = singer::density(spec).density;
  });
  return values;
}

AverageReport average_over_prime_powers(u32 n, double x,
                                        const EnsembleConfig& cfg) {
  AverageReport rep;
  rep.mode = Mode::prime_powers;
  rep.n = n;
  rep.requested_x = x;
  rep.x = x;
  if (n >= 2) {
    double safe = static_cast<double>(static_cast<long double>(largest_safe_q(n)));
    if (x > safe) {
      rep.x = safe;
      rep.truncated = true;
    }
  }
  auto values = density_values_prime_powers(n, rep.x, cfg);
  report_progress(cfg.progress, "prime-power sweep", values.size(), values.size());

  StreamingSum sum(cfg.exact_term_threshold);
  for (const auto& v : values) sum.push(v);
  rep.sample_size = values.size();
  rep.theoretical = constants::euler_product_pn(n, cfg.theory_prime_bound);
  return finish_report(std::move(rep), sum, static_cast<double>(values.size()));
}

AverageReport average_over_extensions(u128 p, u32 n, double x,
                                      const EnsembleConfig& cfg) {
  AverageReport rep;
  rep.mode = Mode::extensions;
  rep.n = n;
  rep.p = p;
  rep.requested_x = x;
  rep.x = x;
  auto values = density_values_extensions(p, n, x, cfg);

  StreamingSum sum(cfg.exact_term_threshold);
  for (const auto& v : values) sum.push(v);
  rep.sample_size = values.size();
  u32 K = cfg.theory_K != 0 ? cfg.theory_K : constants::default_series_truncation(p);
  rep.theoretical = scaled(constants::series_P_grouped(p, n, K), n);
  return finish_report(std::move(rep), sum, static_cast<double>(values.size()));
}

AverageReport average_over_ranks(const arith::PrimePower& q, double x,
                                 const EnsembleConfig& cfg) {
  if (!(x > 1))
    throw InvalidArgument("ensemble ranks: x must exceed 1 (normalizes by log x)");
  AverageReport rep;
  rep.mode = Mode::ranks;
  rep.p = q.p;
  rep.r = q.r;
  rep.q = q.q;
  rep.requested_x = x;
  rep.x = x;
  auto values = density_values_ranks(q, x, cfg);

  StreamingSum sum(cfg.exact_term_threshold);
  for (const auto& v : values) sum.push(v);
  rep.sample_size = values.size();
  u32 K = cfg.theory_K != 0 ? cfg.theory_K
                            : constants::default_series_truncation(q.p);
  rep.theoretical = constants::series_P_grouped(q.p, q.r, K);
  return finish_report(std::move(rep), sum, std::log(x));
}

std::vector<AverageReport> convergence_ladder(const LadderParams& params,
                                              const std::vector<double>& xs,
                                              const EnsembleConfig& cfg) {
  if (xs.empty()) return {};
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw InvalidArgument("ladder: x values must be ascending");
  const double x_final = xs.back();

  // All values up to the final bound, computed once; each rung extends the
  // fold over the shared array.
  std::vector<Rational> values;
  std::vector<u128> thresholds;  // ensemble parameter per index
  constants::CertifiedValue theory;

  switch (params.mode) {
    case Mode::prime_powers: {
      values = density_values_prime_powers(params.n, x_final, cfg);
      auto enumeration = arith::enumerate_prime_powers(x_final);
      for (const auto& pp : enumeration.entries) thresholds.push_back(pp.q);
      theory = constants::euler_product_pn(params.n, cfg.theory_prime_bound);
      break;
    }
    case Mode::extensions: {
      values = density_values_extensions(params.p, params.n, x_final, cfg);
      for (u64 i = 0; i < values.size(); ++i) thresholds.push_back(i + 1);
      u32 K = cfg.theory_K != 0 ? cfg.theory_K
                                : constants::default_series_truncation(params.p);
      theory = constants::series_P_grouped(params.p, params.n, K);
      theory.estimate /= params.n;
      theory.error_bound /= params.n;
      theory.meta += "; scaled by 1/" + std::to_string(params.n);
      break;
    }
    case Mode::ranks: {
      values = density_values_ranks(params.q, x_final, cfg);
      for (u64 i = 0; i < values.size(); ++i) thresholds.push_back(i + 1);
      u32 K = cfg.theory_K != 0 ? cfg.theory_K
                                : constants::default_series_truncation(params.q.p);
      theory = constants::series_P_grouped(params.q.p, params.q.r, K);
      break;
    }
  }

  std::vector<AverageReport> out;
  StreamingSum sum(cfg.exact_term_threshold);
  u64 index = 0;
  for (double x : xs) {
    while (index < values.size() &&
           static_cast<double>(static_cast<long double>(thresholds[index])) <= x) {
      sum.push(values[index]);
      ++index;
    }
    AverageReport rep;
    rep.mode = params.mode;
    rep.requested_x = x;
    rep.x = x;
    rep.theoretical = theory;
    double normalizer = 0;
    switch (params.mode) {
      case Mode::prime_powers:
        rep.n = params.n;
        normalizer = static_cast<double>(index);
        break;
      case Mode::extensions:
        rep.n = params.n;
        rep.p = params.p;
        normalizer = static_cast<double>(index);
        break;
      case Mode::ranks:
        rep.p = params.q.p;
        rep.r = params.q.r;
        rep.q = params.q.q;
        if (!(x > 1)) throw InvalidArgument("ladder ranks: x must exceed 1");
        normalizer = std::log(x);
        break;
    }
    rep.sample_size = index;
    out.push_back(finish_report(std::move(rep), sum, normalizer));
    report_progress(cfg.progress, "ladder rung", index, values.size());
  }
  return out;
}

}  // namespace glq::ensembles
