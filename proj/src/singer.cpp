#include "glq/singer.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glq/error.hpp"
#include "glq/matrix.hpp"

namespace glq::singer {

namespace {

// Decode a base-q index into the n*n entries of a matrix.
SmallMatrix matrix_from_index(u64 index, u32 n, u32 q) {
  SmallMatrix m;
  m.n = n;
  for (u32 i = 0; i < n * n; ++i) {
    m.e[i] = static_cast<u16>(index % q);
    index /= q;
  }
  return m;
}

// True iff m has order exactly `order`: m^order == I and m^(order/l) != I
// for every prime l | order.
bool has_exact_order(const SmallField& f, const SmallMatrix& m, u64 order,
                     const std::vector<u64>& prime_divisors) {
  SmallMatrix id = SmallMatrix::identity(m.n);
  if (!(mat_pow(f, m, order) == id)) return false;
  for (u64 l : prime_divisors)
    if (mat_pow(f, m, order / l) == id) return false;
  return true;
}

u64 count_singer_block(const SmallField& f, u32 n, u64 begin, u64 end,
                       u64 order, const std::vector<u64>& prime_divisors) {
  u64 count = 0;
  for (u64 index = begin; index < end; ++index) {
    SmallMatrix m = matrix_from_index(index, n, f.q());
    if (!mat_invertible(f, m)) continue;
    if (has_exact_order(f, m, order, prime_divisors)) ++count;
  }
  return count;
}

struct OracleSetup {
  SmallField field;
  u64 total_indices;
  u64 order;
  std::vector<u64> prime_divisors;
};

OracleSetup oracle_setup(const GroupSpec& spec, const OracleConfig& cfg) {
  if (spec.n > kMaxMatrixRank)
    throw CapExceeded("matrix oracle: rank " + std::to_string(spec.n) +
                      " exceeds supported maximum " +
                      std::to_string(kMaxMatrixRank));
  u128 group = gl_order(spec);
  if (group > cfg.group_cap)
    throw CapExceeded("matrix oracle: |GL_" + std::to_string(spec.n) + "(" +
                      to_string(spec.q.q) + ")| = " + to_string(group) +
                      " exceeds cap " + std::to_string(cfg.group_cap));
  FiniteFieldSpec fs = build_field_spec(static_cast<u32>(spec.q.p), spec.q.r,
                                        cfg.field_cap);
  u64 order = static_cast<u64>(spec.order_bound());
  std::vector<u64> prime_divisors;
  for (const auto& e : arith::factor_qn_minus_1(spec.q, spec.n).factors)
    prime_divisors.push_back(static_cast<u64>(e.prime));
  u64 total = 1;
  for (u32 i = 0; i < spec.n * spec.n; ++i) total *= fs.q;
  return OracleSetup{SmallField(fs), total, order, std::move(prime_divisors)};
}

}  // namespace

u128 GroupSpec::order_bound() const { return checked_pow(q.q, n) - 1; }

GroupSpec make_group_spec(u32 n, const arith::PrimePower& q) {
  if (n == 0) throw InvalidArgument("group spec: rank must be >= 1");
  GroupSpec spec;
  spec.n = n;
  spec.q = q;
  spec.order_bound();  // throws RangeError if q^n leaves 128 bits
  return spec;
}

u128 gl_order(const GroupSpec& spec) {
  u128 qn = checked_pow(spec.q.q, spec.n);
  u128 result = 1;
  u128 qi = 1;
  for (u32 i = 0; i < spec.n; ++i) {
    result = checked_mul(result, qn - qi);
    qi = checked_mul(qi, spec.q.q);
  }
  return result;
}

u128 singer_count(const GroupSpec& spec) {
  u128 group = gl_order(spec);
  u128 modulus = spec.order_bound();
  u128 phi = arith::euler_phi(arith::factor_qn_minus_1(spec.q, spec.n));
  if (phi % spec.n != 0)
    throw Error("singer_count: n does not divide phi(q^n - 1) for n=" +
                std::to_string(spec.n) + " q=" + to_string(spec.q.q));
  // group / modulus is exact: GL_n(q) has q^n - 1 | |GL_n(q)|.
  if (group % modulus != 0)
    throw Error("singer_count: q^n - 1 does not divide |GL_n(q)|");
  return checked_mul(group / modulus, phi / spec.n);
}

u128 primitive_poly_count(const GroupSpec& spec) {
  u128 phi = arith::euler_phi(arith::factor_qn_minus_1(spec.q, spec.n));
  if (phi % spec.n != 0)
    throw Error("primitive_poly_count: n does not divide phi(q^n - 1)");
  return phi / spec.n;
}

DensityRecord density(const GroupSpec& spec) {
  DensityRecord rec;
  rec.spec = spec;
  rec.modulus = spec.order_bound();
  rec.phi_value = arith::euler_phi(arith::factor_qn_minus_1(spec.q, spec.n));
  u128 den = checked_mul(static_cast<u128>(spec.n), rec.modulus);
  rec.density = Rational::from_ratio(rec.phi_value, den);
  rec.value = rec.density.to_double();
  return rec;
}

u64 oracle_count_max_order_elements_serial(const GroupSpec& spec,
                                           const OracleConfig& cfg) {
  OracleSetup s = oracle_setup(spec, cfg);
  return count_singer_block(s.field, spec.n, 0, s.total_indices, s.order,
                            s.prime_divisors);
}

u64 oracle_count_max_order_elements(const GroupSpec& spec,
                                    const OracleConfig& cfg) {
  if (cfg.workers <= 1) return oracle_count_max_order_elements_serial(spec, cfg);
  OracleSetup s = oracle_setup(spec, cfg);
  u64 count = 0;
#ifdef _OPENMP
  const u64 total = s.total_indices;
  const u64 block = 4096;
  const u64 blocks = (total + block - 1) / block;
#pragma omp parallel for reduction(+ : count) schedule(dynamic) \
    num_threads(cfg.workers)
  for (u64 b = 0; b < blocks; ++b) {
    u64 begin = b * block;
    u64 end = std::min(begin + block, total);
    count += count_singer_block(s.field, spec.n, begin, end, s.order,
                                s.prime_divisors);
  }
#else
  count = count_singer_block(s.field, spec.n, 0, s.total_indices, s.order,
                             s.prime_divisors);
#endif
  return count;
}

namespace {

// Polynomials over the field, dense ascending coefficients (field-encoded).
using FPoly = std::vector<u16>;

FPoly fpoly_trim(FPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

FPoly fpoly_mod(const SmallField& fld, FPoly a, const FPoly& b) {
  u16 lead_inv = fld.inv(b.back());
  while (a.size() >= b.size()) {
    u16 c = fld.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = fld.sub(a[shift + i], fld.mul(c, b[i]));
    a = fpoly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

FPoly fpoly_mulmod(const SmallField& fld, const FPoly& a, const FPoly& b,
                   const FPoly& mod) {
  if (a.empty() || b.empty()) return {};
  FPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = fld.add(prod[i + j], fld.mul(a[i], b[j]));
  }
  return fpoly_mod(fld, std::move(prod), mod);
}

FPoly fpoly_powmod(const SmallField& fld, FPoly base, u128 exp,
                   const FPoly& mod) {
  FPoly result{1};
  while (exp != 0) {
    if (exp & 1) result = fpoly_mulmod(fld, result, base, mod);
    exp >>= 1;
    if (exp != 0) base = fpoly_mulmod(fld, base, base, mod);
  }
  return result;
}

bool fpoly_is_one(const FPoly& f) { return f.size() == 1 && f[0] == 1; }

// Irreducibility over F_q by trial division, as in the prime-field case.
bool fpoly_irreducible(const SmallField& fld, const FPoly& f) {
  std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::size_t d = 1; d * 2 <= deg; ++d) {
    u64 count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= fld.q();
    for (u64 k = 0; k < count; ++k) {
      FPoly g(d + 1, 0);
      u64 rem = k;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<u16>(rem % fld.q());
        rem /= fld.q();
      }
      g[d] = 1;
      if (fpoly_mod(fld, f, g).empty()) return false;
    }
  }
  return true;
}

// Order of f = least e with f | x^e - 1, computed as the multiplicative
// order of x in the field F_q[x]/(f); caller guarantees f irreducible with
// nonzero constant term.
bool fpoly_is_primitive(const SmallField& fld, const FPoly& f, u64 full_order,
                        const std::vector<u64>& prime_divisors) {
  FPoly x{0, 1};
  if (!fpoly_is_one(fpoly_powmod(fld, x, full_order, f))) return false;
  for (u64 l : prime_divisors)
    if (fpoly_is_one(fpoly_powmod(fld, x, full_order / l, f))) return false;
  return true;
}

u64 count_primitive_block(const SmallField& fld, u32 n, u64 begin, u64 end,
                          u64 order, const std::vector<u64>& prime_divisors) {
  u64 count = 0;
  const u32 q = fld.q();
  for (u64 index = begin; index < end; ++index) {
    FPoly f(n + 1, 0);
    u64 rem = index;
    for (u32 i = 0; i < n; ++i) {
      f[i] = static_cast<u16>(rem % q);
      rem /= q;
    }
    f[n] = 1;
    if (f[0] == 0) continue;  // f(0) != 0 required
    if (!fpoly_irreducible(fld, f)) continue;
    if (fpoly_is_primitive(fld, f, order, prime_divisors)) ++count;
  }
  return count;
}

}  // namespace

u64 oracle_count_primitive_polys_serial(const GroupSpec& spec,
                                        const OracleConfig& cfg) {
  u128 qn = checked_pow(spec.q.q, spec.n);
  if (qn > cfg.poly_cap)
    throw CapExceeded("polynomial oracle: q^n = " + to_string(qn) +
                      " exceeds cap " + std::to_string(cfg.poly_cap));
  FiniteFieldSpec fs = build_field_spec(static_cast<u32>(spec.q.p), spec.q.r,
                                        cfg.field_cap);
  SmallField fld(fs);
  u64 order = static_cast<u64>(spec.order_bound());
  std::vector<u64> prime_divisors;
  for (const auto& e : arith::factor_qn_minus_1(spec.q, spec.n).factors)
    prime_divisors.push_back(static_cast<u64>(e.prime));
  return count_primitive_block(fld, spec.n, 0, static_cast<u64>(qn), order,
                               prime_divisors);
}

u64 oracle_count_primitive_polys(const GroupSpec& spec,
                                 const OracleConfig& cfg) {
  if (cfg.workers <= 1) return oracle_count_primitive_polys_serial(spec, cfg);
  u128 qn = checked_pow(spec.q.q, spec.n);
  if (qn > cfg.poly_cap)
    throw CapExceeded("polynomial oracle: q^n = " + to_string(qn) +
                      " exceeds cap " + std::to_string(cfg.poly_cap));
  FiniteFieldSpec fs = build_field_spec(static_cast<u32>(spec.q.p), spec.q.r,
                                        cfg.field_cap);
  SmallField fld(fs);
  u64 order = static_cast<u64>(spec.order_bound());
  std::vector<u64> prime_divisors;
  for (const auto& e : arith::factor_qn_minus_1(spec.q, spec.n).factors)
    prime_divisors.push_back(static_cast<u64>(e.prime));
  u64 count = 0;
#ifdef _OPENMP
  const u64 total = static_cast<u64>(qn);
  const u64 block = 1024;
  const u64 blocks = (total + block - 1) / block;
#pragma omp parallel for reduction(+ : count) schedule(dynamic) \
    num_threads(cfg.workers)
  for (u64 b = 0; b < blocks; ++b) {
    u64 begin = b * block;
    u64 end = std::min(begin + block, total);
    count += count_primitive_block(fld, spec.n, begin, end, order,
                                   prime_divisors);
  }
#else
  count = count_primitive_block(fld, spec.n, 0, static_cast<u64>(qn), order,
                                prime_divisors);
#endif
  return count;
}

u64 naive_matrix_order(const SmallField& f, const SmallMatrix& m, u64 cap) {
  SmallMatrix id = SmallMatrix::identity(m.n);
  SmallMatrix acc = m;
  for (u64 k = 1; k <= cap; ++k) {
    if (acc == id) return k;
    acc = mat_mul(f, acc, m);
  }
  throw Error("naive_matrix_order: cap reached");
}

std::vector<GroupSpec> specs_under_cap(u64 group_cap, u32 field_cap) {
  std::vector<GroupSpec> specs;
  auto enumeration = arith::enumerate_prime_powers(field_cap);
  for (u32 n = 1; n <= kMaxMatrixRank; ++n) {
    bool any = false;
    for (const auto& q : enumeration.entries) {
      GroupSpec spec = make_group_spec(n, q);
      if (gl_order(spec) > group_cap) break;  // |GL_n(q)| grows with q
      specs.push_back(spec);
      any = true;
    }
    if (!any) break;  // grows with n as well
  }
  return specs;
}

}  // namespace glq::singer
