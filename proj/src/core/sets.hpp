// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "core/linalg.hpp"
#include "core/system.hpp"

namespace doa {

// A scalar function whose 1-sublevel set {x : fn(x) <= 1} describes a safe
// set, a region of attraction, or a composition of those. Every variant
// vanishes at the origin. Immutable once built.
class LevelFunction {
 public:
  struct Quadratic {
    Matrix p;  // symmetric positive definite
    double c;  // level, > 0; evaluates x^T P x / c
  };
  struct WeightedInfNorm {
    Matrix e;  // ||E x||_inf
  };
  struct StackedInfNorm {
    std::vector<Matrix> blocks;  // ||[M_1; ...; M_m] x||_inf
  };
  // max(h(x), g(f(x))): the sublevel set is f^{-1}({g <= 1}) intersected with {h <= 1}.
  struct MaxCompose {
    std::shared_ptr<const LevelFunction> g;
    std::shared_ptr<const LevelFunction> h;
    SystemPtr map;
  };
  using Node = std::variant<Quadratic, WeightedInfNorm, StackedInfNorm, MaxCompose>;

  static LevelFunction quadratic(Matrix p, double c);
  static LevelFunction weighted_inf_norm(Matrix e);
  static LevelFunction stacked_inf_norm(std::vector<Matrix> blocks);

  std::size_t dim() const noexcept { return dim_; }
  const Node& node() const noexcept { return node_; }
  bool is_norm() const noexcept;

  double eval(std::span<const double> x) const;
  bool member(std::span<const double> x) const { return eval(x) <= 1.0; }

 private:
  LevelFunction(Node node, std::size_t dim) : node_(std::move(node)), dim_(dim) {}
  double eval_leaf(std::span<const double> x) const;

  Node node_;
  std::size_t dim_ = 0;

  friend LevelFunction preimage_intersect(const LevelFunction&, const LevelFunction&, SystemPtr);
};

// Level function of f^{-1}({g <= 1}) intersected with {h <= 1}.
LevelFunction preimage_intersect(const LevelFunction& g, const LevelFunction& h, SystemPtr sys);

}  // namespace doa
