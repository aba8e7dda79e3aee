// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace doa {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  SingularMatrix,
  NoUniqueSolution,
  SchurUnstable,
  NotConverged,
  NumericalFailure,
  NotAnEquilibrium,
  EpsilonTooLarge,
  MissingCapability,
  UnknownSystem,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace doa
