#pragma once

#include <stdexcept>
#include <string>

namespace glq {

// Process exit codes used by the CLI. Library errors map onto them so a
// shell caller can distinguish failure modes.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  invalid_argument = 2,
  range = 3,
  factor_exhausted = 4,
  cap_exceeded = 5,
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const { return ExitCode::failure; }
};

// Bad parameter or domain violation (e.g. gcd(p,m) > 1).
struct InvalidArgument : Error {
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::invalid_argument; }
};

// A value would exceed the 128-bit magnitude cap or a configured size limit.
struct RangeError : Error {
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::range; }
};

// The deterministic factoring schedule ran out of retries. Never a wrong
// answer; always this error instead.
struct FactorExhausted : Error {
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::factor_exhausted; }
};

// An exhaustive oracle was asked to enumerate past its configured cap.
struct CapExceeded : Error {
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::cap_exceeded; }
};

}  // namespace glq
