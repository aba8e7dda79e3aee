// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "core/bench.hpp"
#include "test_util.hpp"

namespace doa {
namespace {

std::vector<LevelFunction> samples() {
  return {
      LevelFunction::quadratic(Matrix{{2.0, 0.5}, {0.5, 1.0}}, 0.7),
      LevelFunction::weighted_inf_norm(Matrix{{1.0, 0.0}, {0.0, 2.0}}),
      LevelFunction::stacked_inf_norm({Matrix{{1.0, -3.0}}, Matrix{{0.5, 0.0}, {0.0, 4.0}}}),
  };
}

TEST(LevelFunctionTest, Examples) {
  const LevelFunction q = LevelFunction::quadratic(Matrix{{2.0, 0.0}, {0.0, 8.0}}, 2.0);
  EXPECT_DOUBLE_EQ(q.eval(Vector{1.0, 0.5}), (2.0 + 2.0) / 2.0);
  EXPECT_TRUE(q.member(Vector{0.0, 0.5}));
  EXPECT_FALSE(q.is_norm());

  const LevelFunction w = LevelFunction::weighted_inf_norm(Matrix{{1.0, 0.0}, {0.0, 2.0}});
  EXPECT_DOUBLE_EQ(w.eval(Vector{-0.3, 0.5}), 1.0);
  EXPECT_TRUE(w.member(Vector{-0.3, 0.5}));
  EXPECT_FALSE(w.member(Vector{-0.3, 0.51}));
  EXPECT_TRUE(w.is_norm());

  const LevelFunction s = LevelFunction::stacked_inf_norm({Matrix{{1.0, 1.0}}, Matrix::identity(2)});
  EXPECT_DOUBLE_EQ(s.eval(Vector{0.4, 0.5}), 0.9);
  EXPECT_DOUBLE_EQ(s.eval(Vector{0.4, -1.5}), 1.5);
}

TEST(LevelFunctionTest, ConstructionChecks) {
  EXPECT_DOA_ERROR(LevelFunction::quadratic(Matrix::identity(2), 0.0), ErrorCode::InvalidArgument);
  EXPECT_DOA_ERROR(LevelFunction::quadratic(Matrix{{1.0, 0.0}, {0.0, -1.0}}, 1.0),
                   ErrorCode::NotPositiveDefinite);
  EXPECT_DOA_ERROR(LevelFunction::quadratic(Matrix{{1.0, 0.2}, {0.0, 1.0}}, 1.0),
                   ErrorCode::NotSymmetric);
  EXPECT_DOA_ERROR(LevelFunction::stacked_inf_norm({Matrix(1, 2), Matrix(1, 3)}),
                   ErrorCode::DimensionMismatch);
  const LevelFunction v = samples()[0];
  EXPECT_DOA_ERROR(v.eval(Vector{1.0}), ErrorCode::DimensionMismatch);
}

TEST(LevelFunctionTest, VanishesAtOrigin) {
  for (const LevelFunction& fn : samples()) {
    EXPECT_EQ(fn.eval(Vector{0.0, 0.0}), 0.0);
    EXPECT_TRUE(fn.member(Vector{0.0, 0.0}));
  }
}

TEST(LevelFunctionTest, PositiveHomogeneity) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto fns = samples();
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector x{u(rng), u(rng)};
    const double t = u(rng);
    const Vector tx{t * x[0], t * x[1]};
    EXPECT_NEAR(fns[0].eval(tx), t * t * fns[0].eval(x), 1e-12 * (1.0 + t * t * fns[0].eval(x)));
    for (std::size_t k = 1; k < fns.size(); ++k)
      EXPECT_NEAR(fns[k].eval(tx), std::fabs(t) * fns[k].eval(x), 1e-12 * (1.0 + fns[k].eval(tx)));
  }
}

TEST(LevelFunctionTest, NonFiniteInputIsNotAMember) {
  const LevelFunction w = samples()[1];
  EXPECT_EQ(w.eval(Vector{std::nan(""), 0.0}), std::numeric_limits<double>::infinity());
  EXPECT_FALSE(w.member(Vector{std::nan(""), 0.0}));
}

// Preimage-intersection identity, checked against raw evaluation.
TEST(PreimageIntersect, MatchesDefinitionPointwise) {
  const bench::Benchmark b = bench::two_machine();
  const LevelFunction v = LevelFunction::quadratic(Matrix{{21.9, 10.8}, {10.8, 33.6}}, 2.9);
  const LevelFunction composed = preimage_intersect(v, b.theta, b.system);
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int members = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const Vector x{u(rng), u(rng)};
    const Vector fx = (*b.system)(x);
    const bool expected = b.theta.eval(x) <= 1.0 && v.eval(fx) <= 1.0;
    EXPECT_EQ(composed.member(x), expected);
    EXPECT_EQ(composed.eval(x), std::max(b.theta.eval(x), v.eval(fx)));
    members += expected;
  }
  EXPECT_GT(members, 0);
}

TEST(PreimageIntersect, RejectsMismatchedDimensions) {
  const bench::Benchmark b = bench::two_machine();
  const LevelFunction v3 = LevelFunction::weighted_inf_norm(Matrix::identity(3));
  EXPECT_DOA_ERROR(preimage_intersect(v3, b.theta, b.system), ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace doa
