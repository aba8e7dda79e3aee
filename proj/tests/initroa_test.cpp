// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/initroa.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/bench.hpp"
#include "test_util.hpp"

namespace doa {
namespace {

using std::numbers::pi;

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

struct Levels {
  double alpha, beta, c1, c2;
};

// Level formulas recomputed with Eigen, using the textbook root expression.
Levels oracle_levels(const Matrix& a_in, const Matrix& p_in, const Vector& eta_in,
                     const Vector& radius, double d) {
  const Eigen::MatrixXd a = to_eigen(a_in), p = to_eigen(p_in);
  const Eigen::VectorXd eta = Eigen::Map<const Eigen::VectorXd>(eta_in.data(), eta_in.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  const Eigen::MatrixXd half = es.operatorSqrt();
  const Eigen::MatrixXd neg_half = es.operatorInverseSqrt();
  const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
  Levels out{};
  out.alpha = lmax * eta.squaredNorm() / (4.0 * lmin);
  const Eigen::MatrixXd similar = half * a * neg_half;
  const double spectral = Eigen::JacobiSVD<Eigen::MatrixXd>(similar).singularValues()(0);
  out.beta = (half.cwiseAbs() * eta).norm() * spectral;
  const double s = (-out.beta + std::sqrt(out.beta * out.beta + 4.0 * out.alpha * d)) / (2.0 * out.alpha);
  out.c1 = s * s;
  const Eigen::MatrixXd p_inv = p.inverse();
  out.c2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    out.c2 = std::min(out.c2, radius[i] * radius[i] / p_inv(i, i));
  return out;
}

void expect_matches_oracle(const InitialRoaReport& r) {
  const Levels o = oracle_levels(r.a, r.p, r.eta, r.box.radius(), r.d);
  EXPECT_NEAR(r.alpha, o.alpha, 1e-10 * o.alpha);
  EXPECT_NEAR(r.beta, o.beta, 1e-10 * o.beta);
  EXPECT_NEAR(r.c1, o.c1, 1e-9 * o.c1);
  EXPECT_NEAR(r.c2, o.c2, 1e-10 * o.c2);
  EXPECT_EQ(r.c, std::min(r.c1, r.c2));
}

InitialRoaReport two_machine_report(std::optional<double> eps = std::nullopt) {
  const bench::Benchmark b = bench::two_machine();
  return build_initial_roa(*b.system, b.default_box, Matrix::identity(2), eps);
}

TEST(InitialRoa, TwoMachine) {
  const bench::Benchmark b = bench::two_machine();
  const InitialRoaReport r = two_machine_report(0.01);
  const Matrix reference{{21.9377, 10.8408}, {10.8408, 33.6321}};
  EXPECT_LT(testing::max_abs_diff(r.p, reference), 1e-3);
  EXPECT_EQ(r.eta[0], 0.0);
  EXPECT_NEAR(r.eta[1], 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(r.d, 0.99);
  expect_matches_oracle(r);
  EXPECT_EQ(r.binding, BindingConstraint::Decrease);
  EXPECT_GE(r.c, 0.75 * 2.9345);
  EXPECT_LE(r.c, 1.25 * 2.9345);

  const DecreaseCheck check = verify_lyapunov_decrease(r, *b.system, 10000);
  EXPECT_TRUE(check.passed) << check.reason;
  EXPECT_EQ(check.samples, 10000u);
}

TEST(InitialRoa, CartPole) {
  const bench::Benchmark b = bench::cart_pole_closed_loop();
  const InitialRoaReport r = build_initial_roa(*b.system, b.default_box, Matrix::identity(4));
  const Matrix reference{{35.6188, 56.5630, 60.0805, 59.9877},
                         {56.5630, 135.0700, 147.0047, 146.5897},
                         {60.0805, 147.0047, 174.9002, 163.9973},
                         {59.9877, 146.5897, 163.9973, 163.6202}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(r.p(i, j), reference(i, j), 1e-2 * std::fabs(reference(i, j)));
  expect_matches_oracle(r);
  const DecreaseCheck check = verify_lyapunov_decrease(r, *b.system, 10000);
  EXPECT_TRUE(check.passed) << check.reason;
}

TEST(InitialRoa, LinearSystemUsesContainmentLevel) {
  const SystemPtr sys = make_linear_system("lin", Matrix{{0.5, 0.2}, {0.0, 0.3}});
  const HyperRect box({1.0, 2.0});
  const InitialRoaReport r = build_initial_roa(*sys, box, Matrix::identity(2));
  EXPECT_EQ(r.alpha, 0.0);
  EXPECT_EQ(r.beta, 0.0);
  EXPECT_TRUE(std::isinf(r.c1));
  EXPECT_EQ(r.binding, BindingConstraint::Containment);
  EXPECT_EQ(r.c, r.c2);
  const Matrix p_inv = inverse(r.p);
  EXPECT_NEAR(r.c2, std::min(1.0 / p_inv(0, 0), 4.0 / p_inv(1, 1)), 1e-12);
  EXPECT_TRUE(verify_lyapunov_decrease(r, *sys, 2000).passed);
}

TEST(InitialRoa, InflatedLevelIsRejected) {
  const bench::Benchmark b = bench::two_machine();
  const InitialRoaReport r = with_level(two_machine_report(), 100.0 * two_machine_report().c);
  const DecreaseCheck check = verify_lyapunov_decrease(r, *b.system, 10000);
  EXPECT_FALSE(check.passed);
  ASSERT_TRUE(check.counterexample.has_value());
  EXPECT_FALSE(check.reason.empty());
}

TEST(InitialRoa, LevelIsMonotoneInEpsilon) {
  double previous_c = 0.0;
  const double c2 = two_machine_report(0.5).c2;
  for (double eps : {0.9, 0.5, 0.1, 0.01, 0.001}) {
    const InitialRoaReport r = two_machine_report(eps);
    EXPECT_GE(r.c, previous_c);
    EXPECT_EQ(r.c2, c2);
    previous_c = r.c;
  }
}

TEST(InitialRoa, DoublingQDoublesP) {
  const bench::Benchmark cp = bench::cart_pole_closed_loop();
  const InitialRoaReport one = build_initial_roa(*cp.system, cp.default_box, Matrix::identity(4));
  const InitialRoaReport two = build_initial_roa(*cp.system, cp.default_box, 2.0 * Matrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(two.p(i, j), 2.0 * one.p(i, j), 1e-10 * std::fabs(2.0 * one.p(i, j)));
}

TEST(InitialRoa, EllipsoidIsInvariant) {
  for (const bench::Benchmark& b : {bench::two_machine(), bench::cart_pole_closed_loop()}) {
    const InitialRoaReport r =
        build_initial_roa(*b.system, b.default_box, Matrix::identity(b.system->dim));
    const Matrix p_inv = inverse(r.p);
    Vector half(b.system->dim);
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = std::sqrt(r.c * p_inv(i, i));
    std::mt19937_64 rng(61);
    int checked = 0;
    while (checked < 1000) {
      const Vector x = testing::random_in_box(rng, half);
      if (!r.v.member(x)) continue;
      ++checked;
      EXPECT_TRUE(r.v.member((*b.system)(x)));
      EXPECT_TRUE(r.box.contains(x, 1e-12));
    }
  }
}

TEST(InitialRoa, ErrorPaths) {
  const bench::Benchmark b = bench::two_machine();
  const Matrix id = Matrix::identity(2);
  EXPECT_DOA_ERROR(build_initial_roa(*b.system, b.default_box, id, 1.0), ErrorCode::EpsilonTooLarge);
  EXPECT_DOA_ERROR(build_initial_roa(*b.system, b.default_box, id, 0.0), ErrorCode::InvalidArgument);
  EXPECT_DOA_ERROR(build_initial_roa(*b.system, b.default_box, Matrix{{1.0, 0.0}, {0.0, -1.0}}),
                   ErrorCode::NotPositiveDefinite);
  EXPECT_DOA_ERROR(build_initial_roa(*b.system, HyperRect({1.0, 1.0, 1.0}), id),
                   ErrorCode::DimensionMismatch);

  const SystemPtr unstable = make_linear_system("unstable", Matrix{{1.1, 0.0}, {0.0, 0.5}});
  EXPECT_DOA_ERROR(build_initial_roa(*unstable, HyperRect({1.0, 1.0}), id), ErrorCode::SchurUnstable);
  const SystemPtr marginal = make_linear_system("marginal", Matrix{{1.0, 0.0}, {0.0, 0.5}});
  EXPECT_DOA_ERROR(build_initial_roa(*marginal, HyperRect({1.0, 1.0}), id), ErrorCode::SchurUnstable);

  auto shifted = std::make_shared<SystemModel>(*make_linear_system("shifted", Matrix::identity(2)));
  shifted->step = [](std::span<const double> x) { return Vector{0.5 * x[0] + 0.1, 0.5 * x[1]}; };
  EXPECT_DOA_ERROR(build_initial_roa(*shifted, HyperRect({1.0, 1.0}), id), ErrorCode::NotAnEquilibrium);
}

TEST(BoxInSafeSet, VertexCheck) {
  const bench::Benchmark tm = bench::two_machine();
  EXPECT_EQ(box_inside_safe_set(tm.theta, tm.default_box), true);
  EXPECT_EQ(box_inside_safe_set(tm.theta, HyperRect({1.0, 0.6})), false);
  const bench::Benchmark cp = bench::cart_pole_closed_loop();
  EXPECT_EQ(box_inside_safe_set(cp.theta, cp.default_box), true);
  EXPECT_EQ(box_inside_safe_set(cp.theta, HyperRect({0.1, 0.1, pi / 4.0, 0.1})), false);
  const LevelFunction quad = LevelFunction::quadratic(Matrix::identity(2), 1.0);
  EXPECT_FALSE(box_inside_safe_set(quad, tm.default_box).has_value());
}

}  // namespace
}  // namespace doa
