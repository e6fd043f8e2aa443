// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace secroute {

enum class ErrorKind {
  InvalidArgument,
  ZeroDistance,
  AlphaOutOfRange,
  QuadratureNonConvergence,
  NumericallyDegenerateRates,
  DegenerateWindow,
  UnequalPowers,
  TooLarge,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define SECROUTE_REQUIRE(cond, kind, msg)            \
  do {                                               \
    if (!(cond)) throw ::secroute::Error((kind), (msg)); \
  } while (0)

}  // namespace secroute
