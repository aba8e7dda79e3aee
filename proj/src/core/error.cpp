// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

namespace doa {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotSymmetric: return "matrix not symmetric";
    case ErrorCode::NotPositiveDefinite: return "matrix not positive definite";
    case ErrorCode::SingularMatrix: return "singular matrix";
    case ErrorCode::NoUniqueSolution: return "no unique solution";
    case ErrorCode::SchurUnstable: return "Jacobian not Schur stable";
    case ErrorCode::NotConverged: return "iteration did not converge";
    case ErrorCode::NumericalFailure: return "numerical failure";
    case ErrorCode::NotAnEquilibrium: return "origin is not an equilibrium";
    case ErrorCode::EpsilonTooLarge: return "epsilon too large";
    case ErrorCode::MissingCapability: return "missing capability";
    case ErrorCode::UnknownSystem: return "unknown system";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::IoError: return "I/O error";
  }
  return "unknown error";
}

}  // namespace doa
