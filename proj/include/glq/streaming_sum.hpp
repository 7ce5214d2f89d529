#pragma once

#include "glq/rational.hpp"

namespace glq {

// Order-fixed streaming sum: exact rationals until either 128 bits overflow
// or a configured term budget is reached, then compensated long-double
// summation seeded from the exact partial. Folding is strictly sequential,
// so the result is independent of how term values were produced.
class StreamingSum {
 public:
  explicit StreamingSum(u64 max_exact_terms = ~static_cast<u64>(0))
      : max_exact_terms_(max_exact_terms) {}

  void push(const Rational& term) {
    ++count_;
    if (exact_alive_) {
      if (exact_terms_ < max_exact_terms_) {
        if (auto next = Rational::add(acc_, term)) {
          acc_ = *next;
          ++exact_terms_;
          return;
        }
      }
      spill();
    }
    add_float(static_cast<long double>(term.num) /
              static_cast<long double>(term.den));
  }

  void push_float(long double v) {
    ++count_;
    if (exact_alive_) spill();
    add_float(v);
  }

  bool exact() const { return exact_alive_; }
  u64 exact_terms() const { return exact_terms_; }
  u64 count() const { return count_; }
  const Rational& exact_value() const { return acc_; }

  long double value() const {
    if (exact_alive_)
      return static_cast<long double>(acc_.num) /
             static_cast<long double>(acc_.den);
    return sum_;
  }

 private:
  void spill() {
    exact_alive_ = false;
    sum_ = static_cast<long double>(acc_.num) /
           static_cast<long double>(acc_.den);
    comp_ = 0;
  }

  void add_float(long double v) {
    long double y = v - comp_;
    long double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  u64 max_exact_terms_;
  bool exact_alive_ = true;
  Rational acc_{0, 1};
  u64 exact_terms_ = 0;
  u64 count_ = 0;
  long double sum_ = 0;
  long double comp_ = 0;
};

}  // namespace glq
