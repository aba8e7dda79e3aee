// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/initroa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "core/error.hpp"

namespace doa {

const char* to_string(BindingConstraint b) noexcept {
  return b == BindingConstraint::Decrease ? "c1" : "c2";
}

InitialRoaReport build_initial_roa(const SystemModel& sys, const HyperRect& box, const Matrix& q,
                                   std::optional<double> epsilon) {
  validate(sys);
  const std::size_t n = sys.dim;
  if (box.dim() != n) fail(ErrorCode::DimensionMismatch, "box dimension does not match the system");
  if (q.rows() != n || q.cols() != n) fail(ErrorCode::DimensionMismatch, "Q must be n x n");
  if (!is_symmetric(q) || !is_positive_definite(q))
    fail(ErrorCode::NotPositiveDefinite, "Q must be symmetric positive definite");

  const double lambda_min_q = sym_eig(q).min();
  const double eps = epsilon.value_or(0.01 * lambda_min_q);
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double d = lambda_min_q - eps;
  if (!(d > 0.0))
    fail(ErrorCode::EpsilonTooLarge, "epsilon must be smaller than lambda_min(Q) = " + std::to_string(lambda_min_q));

  const Matrix& a = sys.jacobian_origin;
  // A singular Kronecker system means some eigenvalue product equals one,
  // which already rules out Schur stability.
  Matrix p;
  try {
    p = solve_dlyap(a, q);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoUniqueSolution) throw;
    fail(ErrorCode::SchurUnstable, std::string("Jacobian at the origin is not Schur stable: ") + e.what());
  }
  const Vector eta = hessian_eta(sys, box);

  const SymEig eig_p = sym_eig(p);
  const double lambda_min_p = eig_p.min();
  const double norm_p = eig_p.max();  // spectral norm of an SPD matrix
  const Matrix p_half = sqrt_spd(p);
  const Matrix p_neg_half = inv_sqrt_spd(p);

  const double eta_sq = dot(eta, eta);
  const double alpha = norm_p * eta_sq / (4.0 * lambda_min_p);
  const double beta = norm2(p_half.abs() * eta) * norms(p_half * a * p_neg_half).spectral;

  double c1 = std::numeric_limits<double>::infinity();
  if (alpha > 1e-14) {
    // Positive root of alpha s^2 + beta s - d in s = sqrt(c), written in the
    // cancellation-free form 2d / (beta + sqrt(beta^2 + 4 alpha d)).
    const double root = 2.0 * d / (beta + std::sqrt(beta * beta + 4.0 * alpha * d));
    c1 = root * root;
  } else if (beta > 1e-14) {
    c1 = (d / beta) * (d / beta);
  }

  const Matrix p_inv = inverse(p);
  double c2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = box.radius()[i];
    c2 = std::min(c2, r * r / p_inv(i, i));
  }
  if (!(c2 > 0.0))
    fail(ErrorCode::InvalidArgument, "box has a zero radius; containment level is zero");

  const double c = std::min(c1, c2);
  return InitialRoaReport{
      .a = a,
      .q = q,
      .p = p,
      .box = box,
      .eta = eta,
      .epsilon = eps,
      .d = d,
      .alpha = alpha,
      .beta = beta,
      .c1 = c1,
      .c2 = c2,
      .c = c,
      .lambda_min_p = lambda_min_p,
      .lambda_max_p = norm_p,
      .binding = c1 < c2 ? BindingConstraint::Decrease : BindingConstraint::Containment,
      .v = LevelFunction::quadratic(p, c),
  };
}

InitialRoaReport with_level(const InitialRoaReport& report, double c) {
  InitialRoaReport out = report;
  out.c = c;
  out.v = LevelFunction::quadratic(report.p, c);
  return out;
}

DecreaseCheck verify_lyapunov_decrease(const InitialRoaReport& report, const SystemModel& sys,
                                       std::size_t samples, std::uint64_t seed) {
  const std::size_t n = sys.dim;
  const Matrix p_inv = inverse(report.p);
  Vector half_width(n);
  for (std::size_t i = 0; i < n; ++i) half_width[i] = std::sqrt(report.c * p_inv(i, i));

  const auto nu = [&](std::span<const double> x) {
    return report.c * report.v.eval(x);
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  DecreaseCheck out;
  const std::size_t max_draws = std::max<std::size_t>(samples, 1) * 100000;
  Vector x(n);
  for (std::size_t draw = 0; draw < max_draws && out.samples < samples; ++draw) {
    for (std::size_t i = 0; i < n; ++i) x[i] = half_width[i] * unit(rng);
    if (norm2(x) < 1e-8 || !report.v.member(x)) continue;
    ++out.samples;
    const double slack = 1e-12 * (1.0 + norm_inf(report.box.radius()));
    if (!report.box.contains(x, slack)) {
      out.counterexample = x;
      out.reason = "sample of the level set lies outside the box";
      return out;
    }
    const Vector fx = sys(x);
    if (!(nu(fx) < nu(x))) {
      out.counterexample = x;
      out.reason = "Lyapunov function does not decrease";
      return out;
    }
  }
  if (out.samples < samples) {
    out.reason = "rejection sampling exhausted its draw budget";
    return out;
  }
  out.passed = true;
  return out;
}

std::optional<bool> box_inside_safe_set(const LevelFunction& theta, const HyperRect& box) {
  if (!theta.is_norm()) return std::nullopt;
  if (theta.dim() != box.dim()) fail(ErrorCode::DimensionMismatch, "theta/box dimension mismatch");
  for (const Vector& vertex : box.vertices())
    if (!theta.member(vertex)) return false;
  return true;
}

}  // namespace doa
