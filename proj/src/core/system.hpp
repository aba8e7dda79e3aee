// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "core/interval.hpp"
#include "core/linalg.hpp"

namespace doa {

// Discrete-time autonomous system x+ = f(x) with an equilibrium at the origin.
struct SystemModel {
  std::string name;
  std::size_t dim = 0;
  std::function<Vector(std::span<const double>)> step;
  Matrix jacobian_origin;
  // Interval enclosure of the Hessian of component i over an origin-centred
  // box. Empty when the model cannot bound its second derivatives.
  std::function<IntervalMatrix(std::size_t, const HyperRect&)> interval_hessian;
  // Construction arguments needed to rebuild the model by name (the feedback
  // gain for closed-loop benchmarks). Empty for parameter-free models.
  Vector parameters;

  Vector operator()(std::span<const double> x) const;
};

using SystemPtr = std::shared_ptr<const SystemModel>;

// Checks dimensions, ||f(0)|| < 1e-12 and finiteness of the Jacobian.
void validate(const SystemModel& sys);

// f(x) = A x, with a zero Hessian.
SystemPtr make_linear_system(std::string name, Matrix a);

// Central-difference estimate of Df(x).
Matrix finite_difference_jacobian(const SystemModel& sys, std::span<const double> x,
                                  double h = 1e-6);

}  // namespace doa
