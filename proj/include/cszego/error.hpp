// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cszego {

enum class ErrorKind {
  Domain,            // argument outside the mathematical domain
  Pole,              // evaluation at a pole
  UnsupportedParameter,
  UnboundedCurve,
  CapacityUnknown,
  PoleOnCurve,
  Singular,          // kernel evaluated on its singular set
  SideMismatch,
  NoRiemannMap,
  Parity,
  Frame,
  NonConvergence,
  Conditioning,
  InsufficientData,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Iterative method ran out of iterations; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(ErrorKind::NonConvergence, what), best_(best_estimate) {}

  double best_estimate() const noexcept { return best_; }

 private:
  double best_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace cszego
