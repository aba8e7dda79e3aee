// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "core/linalg.hpp"
#include "core/sets.hpp"
#include "core/system.hpp"

namespace doa {

// Implicit representation of the k-th safe region of attraction
//   V_0 = {v <= 1},  V_{k+1} = f^{-1}(V_k) ∩ {theta <= 1},
// stored as (theta, v, k) and evaluated pointwise by iterating f. The
// composed level function
//   v_k(x) = max(theta(x), theta(f(x)), ..., theta(f^{k-1}(x)), v(f^k(x)))
// is never materialized.
class Certificate {
 public:
  // `certified` records whether {v <= 1} comes from a built InitialRoaReport
  // (true) or is trusted by the caller.
  Certificate(LevelFunction theta, LevelFunction v0, std::size_t depth, SystemPtr sys,
              bool certified = true);

  const LevelFunction& theta() const noexcept { return theta_; }
  const LevelFunction& v0() const noexcept { return v0_; }
  std::size_t depth() const noexcept { return depth_; }
  const SystemPtr& system() const noexcept { return sys_; }
  std::size_t dim() const noexcept { return sys_->dim; }
  bool certified() const noexcept { return certified_; }

  Certificate with_depth(std::size_t depth) const;

 private:
  LevelFunction theta_;
  LevelFunction v0_;
  std::size_t depth_;
  SystemPtr sys_;
  bool certified_;
};

// k evaluations of f and theta and one of v. A trajectory that leaves the
// floating range yields +inf.
double eval_vk(const Certificate& cert, std::span<const double> x);
bool member_vk(const Certificate& cert, std::span<const double> x);

// Smallest k <= k_max with x in V_k, from one forward pass of k_max steps.
std::optional<std::size_t> certificate_depth(const LevelFunction& theta, const LevelFunction& v0,
                                             const SystemModel& sys, std::span<const double> x,
                                             std::size_t k_max);

struct Trajectory {
  std::vector<Vector> states;  // x_0 .. x_N as evaluated
  bool diverged = false;       // stopped early: a component exceeded 1e12
};

Trajectory simulate(const SystemModel& sys, std::span<const double> x0, std::size_t steps);

struct SafetyVerdict {
  bool safe = false;       // theta(x_j) <= 1 + 1e-12 for every state
  bool attracted = false;  // ||x_N|| < conv_tol
  std::optional<std::size_t> first_violation;
};

SafetyVerdict check_safe_attraction(const Trajectory& traj, const LevelFunction& theta,
                                    double conv_tol);

struct GridSpec {
  std::size_t axis_i = 0;
  std::size_t axis_j = 1;
  Vector fixed;  // values of the non-varying coordinates (length n)
  double lo_i = -1.0, hi_i = 1.0;
  double lo_j = -1.0, hi_j = 1.0;
  std::size_t n_i = 2, n_j = 2;

  double coord_i(std::size_t a) const;
  double coord_j(std::size_t b) const;
};

// Row-major over (a, b): cell (a, b) sits at index a * n_j + b and has
// x[axis_i] = coord_i(a), x[axis_j] = coord_j(b).
struct Grid {
  GridSpec spec;
  std::vector<double> values;
  std::vector<unsigned char> members;

  std::size_t member_count() const;
};

// Cells are independent; `threads` = 0 picks the hardware concurrency. The
// result does not depend on the thread count.
Grid grid_section(const Certificate& cert, const GridSpec& spec, unsigned threads = 1);

}  // namespace doa
