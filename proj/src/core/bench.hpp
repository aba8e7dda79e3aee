// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/interval.hpp"
#include "core/linalg.hpp"
#include "core/sets.hpp"
#include "core/system.hpp"

namespace doa::bench {

inline constexpr double kTimeStep = 0.1;

// A benchmark system together with its safe set theta and the box used when
// building the initial region of attraction.
struct Benchmark {
  SystemPtr system;
  LevelFunction theta;
  HyperRect default_box;
};

// Controlled system x+ = f~(x, u) closed with u = K x.
struct ClosedLoopSpec {
  std::function<Vector(std::span<const double>, std::span<const double>)> open_loop;
  Matrix gain;                       // m x n
  std::vector<Interval> input_box;   // one symmetric interval per input
};

// Two-machine power system, Euler step 0.1, safe set |x1| <= 1, |x2| <= 0.5.
Benchmark two_machine();

// Reference closed-loop gain for the cart-pole, u = K x.
Matrix cart_pole_reference_gain();

ClosedLoopSpec cart_pole_spec(const Matrix& gain);

// Cart-pole closed with u = K x. theta stacks the input constraint |K x| <= 1
// with the state box |x_i| <= (0.1, 0.1, pi/4, 0.1)_i.
Benchmark cart_pole_closed_loop(std::optional<Matrix> gain = std::nullopt);

// Open-loop linearization at (x, u) = (0, 0).
struct Linearization {
  Matrix a;
  Matrix b;
};
Linearization cart_pole_linearization();

// LQR gain from the discrete Riccati equation, returned in the u = K x
// convention used by cart_pole_closed_loop (A + B K is Schur stable).
Matrix cart_pole_lqr(const Matrix& q, const Matrix& r);

// Resolves "two_machine" or "cart_pole"; `parameters` optionally carries the
// cart-pole gain.
Benchmark make_benchmark(std::string_view name, std::span<const double> parameters = {});

std::vector<std::string> benchmark_names();

// Point Hessians of each component, used to cross-check the interval
// extensions against finite differences.
std::vector<Matrix> two_machine_hessians(std::span<const double> x);
std::vector<Matrix> cart_pole_hessians(const Matrix& gain, std::span<const double> x);

}  // namespace doa::bench
