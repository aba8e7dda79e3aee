// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "core/interval.hpp"
#include "core/linalg.hpp"
#include "core/sets.hpp"
#include "core/system.hpp"

namespace doa {

enum class BindingConstraint { Decrease, Containment };  // c1 vs c2

const char* to_string(BindingConstraint b) noexcept;

// Every intermediate quantity of the quadratic-Lyapunov region of attraction
// construction, kept for audit.
struct InitialRoaReport {
  Matrix a;    // Df(0)
  Matrix q;
  Matrix p;    // A^T P A - P = -Q
  HyperRect box;
  Vector eta;  // |f(x) - A x| <= 0.5 ||x||^2 eta on the box
  double epsilon = 0.0;
  double d = 0.0;      // lambda_min(Q) - epsilon
  double alpha = 0.0;  // ||P|| ||eta||^2 / (4 lambda_min(P))
  double beta = 0.0;   // || |P^1/2| eta || * ||P^1/2 A P^-1/2||
  double c1 = 0.0;     // decrease level; +inf when alpha = beta = 0
  double c2 = 0.0;     // containment level min_i R_i^2 / (P^-1)_ii
  double c = 0.0;
  double lambda_min_p = 0.0;
  double lambda_max_p = 0.0;
  BindingConstraint binding = BindingConstraint::Containment;
  LevelFunction v;     // x^T P x / c
};

// Builds the ellipsoidal safe region {x : x^T P x <= c} inside `box`.
// `epsilon` defaults to 0.01 * lambda_min(Q).
//
// Throws NotAnEquilibrium when f(0) != 0, EpsilonTooLarge when
// epsilon >= lambda_min(Q), and SchurUnstable when Df(0) has an eigenvalue
// on or outside the unit circle.
InitialRoaReport build_initial_roa(const SystemModel& sys, const HyperRect& box, const Matrix& q,
                                   std::optional<double> epsilon = std::nullopt);

// Result of a sampled check of the Lyapunov decrease condition.
struct DecreaseCheck {
  bool passed = false;
  std::size_t samples = 0;
  std::optional<Vector> counterexample;
  std::string reason;  // empty when passed
};

// Draws points uniformly from {x : v(x) <= 1} \ {0} by rejection sampling in
// the ellipsoid's bounding box, and checks x^T P x > f(x)^T P f(x) and x in
// the box for each.
DecreaseCheck verify_lyapunov_decrease(const InitialRoaReport& report, const SystemModel& sys,
                                       std::size_t samples, std::uint64_t seed = 0x5eed);

// Same report with the level c replaced (c1, c2 untouched); used to probe a
// deliberately uncertified level.
InitialRoaReport with_level(const InitialRoaReport& report, double c);

// Whether the box lies in {theta <= 1}, decided from its vertices. Only valid
// for convex symmetric theta (the norm variants); returns nullopt otherwise.
std::optional<bool> box_inside_safe_set(const LevelFunction& theta, const HyperRect& box);

}  // namespace doa
