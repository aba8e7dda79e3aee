// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/bench.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <type_traits>

#include "core/error.hpp"

namespace doa::bench {

namespace {

using std::numbers::pi;

// Shared closed forms, instantiated for double (point Hessian) and Interval
// (enclosure over a box).
template <class T>
T sin_of(const T& x) {
  if constexpr (std::is_same_v<T, Interval>) return iv_sin(x); else return std::sin(x);
}
template <class T>
T cos_of(const T& x) {
  if constexpr (std::is_same_v<T, Interval>) return iv_cos(x); else return std::cos(x);
}

// Only d^2 f2 / dx1^2 = dt sin(x1 + pi/3) is nonzero.
template <class T>
T two_machine_h11(const T& x1) {
  return T(kTimeStep) * sin_of(x1 + T(pi / 3.0));
}

// f4 = x4 + dt (sin x3 - cos x3 * u), u = K x. With s = sin x3, c = cos x3:
//   d2f4/dx3^2      = dt ((2 K3 - 1) s + c u)
//   d2f4/dx3 dxl    = dt K_l s          (l != 3)
// and every other second derivative of every component vanishes.
template <class T, class Grid>
void cart_pole_f4_hessian(const Matrix& gain, const T& x3, const T& u, Grid&& set) {
  const T s = sin_of(x3);
  const T c = cos_of(x3);
  const T dt(kTimeStep);
  for (std::size_t l = 0; l < 4; ++l) {
    if (l == 2) continue;
    const T v = dt * T(gain(0, l)) * s;
    set(2, l, v);
    set(l, 2, v);
  }
  set(2, 2, dt * (T(2.0 * gain(0, 2) - 1.0) * s + c * u));
}

Matrix state_weights() {
  const double r[4] = {0.1, 0.1, pi / 4.0, 0.1};
  Matrix e(4, 4);
  for (std::size_t i = 0; i < 4; ++i) e(i, i) = 1.0 / r[i];
  return e;
}

void require_gain(const Matrix& gain) {
  if (gain.rows() != 1 || gain.cols() != 4)
    fail(ErrorCode::DimensionMismatch, "cart-pole gain must be 1x4");
}

}  // namespace

Benchmark two_machine() {
  auto sys = std::make_shared<SystemModel>();
  sys->name = "two_machine";
  sys->dim = 2;
  sys->step = [](std::span<const double> x) {
    const double dt = kTimeStep;
    return Vector{x[0] + dt * x[1],
                  x[1] - dt * (x[1] / 2.0 + std::sin(x[0] + pi / 3.0) - std::sin(pi / 3.0))};
  };
  sys->jacobian_origin = Matrix{{1.0, kTimeStep}, {-kTimeStep * std::cos(pi / 3.0), 1.0 - kTimeStep / 2.0}};
  sys->interval_hessian = [](std::size_t i, const HyperRect& box) {
    IntervalMatrix h(2, 2);
    if (i == 1) h(0, 0) = two_machine_h11(box.interval(0));
    return h;
  };
  validate(*sys);
  const double e[2] = {1.0, 2.0};
  return {sys, LevelFunction::weighted_inf_norm(Matrix::diagonal(e)), HyperRect({1.0, 0.5})};
}

Matrix cart_pole_reference_gain() { return Matrix{{1.6897, 6.2464, 11.3886, 11.4026}}; }

ClosedLoopSpec cart_pole_spec(const Matrix& gain) {
  require_gain(gain);
  ClosedLoopSpec spec;
  spec.gain = gain;
  spec.input_box = {Interval(-1.0, 1.0)};
  spec.open_loop = [](std::span<const double> x, std::span<const double> u) {
    const double dt = kTimeStep;
    return Vector{x[0] + dt * x[1], x[1] + dt * u[0], x[2] + dt * x[3],
                  x[3] + dt * (std::sin(x[2]) - std::cos(x[2]) * u[0])};
  };
  return spec;
}

Benchmark cart_pole_closed_loop(std::optional<Matrix> gain_arg) {
  const Matrix gain = gain_arg ? *gain_arg : cart_pole_reference_gain();
  const ClosedLoopSpec spec = cart_pole_spec(gain);

  auto sys = std::make_shared<SystemModel>();
  sys->name = "cart_pole";
  sys->dim = 4;
  sys->parameters = gain.entries();
  sys->step = [spec](std::span<const double> x) {
    const Vector u = spec.gain * x;
    return spec.open_loop(x, u);
  };

  const double dt = kTimeStep;
  Matrix jac = Matrix::identity(4);
  jac(0, 1) += dt;
  jac(2, 3) += dt;
  for (std::size_t j = 0; j < 4; ++j) {
    jac(1, j) += dt * gain(0, j);
    jac(3, j) -= dt * gain(0, j);
  }
  jac(3, 2) += dt;  // d sin(x3)/dx3 at 0
  sys->jacobian_origin = jac;

  sys->interval_hessian = [gain](std::size_t i, const HyperRect& box) {
    IntervalMatrix h(4, 4);
    if (i != 3) return h;
    Interval u(0.0);
    for (std::size_t j = 0; j < 4; ++j) u = u + Interval(gain(0, j)) * box.interval(j);
    cart_pole_f4_hessian(gain, box.interval(2), u,
                         [&](std::size_t r, std::size_t c, const Interval& v) { h(r, c) = v; });
    return h;
  };
  validate(*sys);

  // theta(x) = ||[K / u_max; E] x||_inf folds |u| <= u_max into the safe set.
  Matrix input_rows = gain;
  for (std::size_t r = 0; r < input_rows.rows(); ++r) {
    const double umax = spec.input_box[r].mag();
    for (std::size_t c = 0; c < input_rows.cols(); ++c) input_rows(r, c) /= umax;
  }
  const Matrix e = state_weights();
  LevelFunction theta = LevelFunction::stacked_inf_norm({input_rows, e});

  // Cube of radius 1 / ||[K; E]||_inf.
  Matrix stacked(5, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    stacked(0, c) = input_rows(0, c);
    for (std::size_t r = 0; r < 4; ++r) stacked(r + 1, c) = e(r, c);
  }
  const double radius = 1.0 / norms(stacked).inf;
  return {sys, std::move(theta), HyperRect(Vector(4, radius))};
}

Linearization cart_pole_linearization() {
  const double dt = kTimeStep;
  Matrix a = Matrix::identity(4);
  a(0, 1) = dt;
  a(2, 3) = dt;
  a(3, 2) = dt;
  Matrix b(4, 1);
  b(1, 0) = dt;
  b(3, 0) = -dt;
  return {a, b};
}

Matrix cart_pole_lqr(const Matrix& q, const Matrix& r) {
  const Linearization lin = cart_pole_linearization();
  const DareSolution sol = solve_dare(lin.a, lin.b, q, r);
  return -1.0 * sol.k;
}

Benchmark make_benchmark(std::string_view name, std::span<const double> parameters) {
  if (name == "two_machine") {
    if (!parameters.empty()) fail(ErrorCode::InvalidArgument, "two_machine takes no parameters");
    return two_machine();
  }
  if (name == "cart_pole") {
    if (parameters.empty()) return cart_pole_closed_loop();
    if (parameters.size() != 4) fail(ErrorCode::DimensionMismatch, "cart_pole gain must have 4 entries");
    return cart_pole_closed_loop(Matrix(1, 4, Vector(parameters.begin(), parameters.end())));
  }
  fail(ErrorCode::UnknownSystem, "unknown system '" + std::string(name) + "'");
}

std::vector<std::string> benchmark_names() { return {"two_machine", "cart_pole"}; }

std::vector<Matrix> two_machine_hessians(std::span<const double> x) {
  std::vector<Matrix> h(2, Matrix(2, 2));
  h[1](0, 0) = two_machine_h11(x[0]);
  return h;
}

std::vector<Matrix> cart_pole_hessians(const Matrix& gain, std::span<const double> x) {
  require_gain(gain);
  std::vector<Matrix> h(4, Matrix(4, 4));
  const double u = (gain * x)[0];
  cart_pole_f4_hessian(gain, x[2], u,
                       [&](std::size_t r, std::size_t c, double v) { h[3](r, c) = v; });
  return h;
}

}  // namespace doa::bench
