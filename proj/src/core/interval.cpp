// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/system.hpp"

namespace doa {

Interval::Interval(double point) : Interval(point, point) {}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    fail(ErrorCode::InvalidArgument,
         "invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double Interval::mag() const noexcept { return std::max(std::fabs(lo), std::fabs(hi)); }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// True when some point `phase + 2k*pi` lies in [lo, hi].
bool hits(double phase, const Interval& a) {
  const double k = std::ceil((a.lo - phase) / kTwoPi);
  return phase + k * kTwoPi <= a.hi;
}

Interval clamp_unit(double lo, double hi) {
  return {std::clamp(lo, -1.0, 1.0), std::clamp(hi, -1.0, 1.0)};
}

}  // namespace

Interval iv_sin(const Interval& a) {
  if (a.width() >= kTwoPi) return {-1.0, 1.0};
  const double s0 = std::sin(a.lo);
  const double s1 = std::sin(a.hi);
  double lo = std::min(s0, s1);
  double hi = std::max(s0, s1);
  if (hits(0.5 * std::numbers::pi, a)) hi = 1.0;
  if (hits(-0.5 * std::numbers::pi, a)) lo = -1.0;
  return clamp_unit(lo, hi);
}

Interval iv_cos(const Interval& a) {
  if (a.width() >= kTwoPi) return {-1.0, 1.0};
  const double c0 = std::cos(a.lo);
  const double c1 = std::cos(a.hi);
  double lo = std::min(c0, c1);
  double hi = std::max(c0, c1);
  if (hits(0.0, a)) hi = 1.0;
  if (hits(std::numbers::pi, a)) lo = -1.0;
  return clamp_unit(lo, hi);
}

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix IntervalMatrix::magnitude() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mag();
  return m;
}

HyperRect::HyperRect(Vector radius) : radius_(std::move(radius)) {
  if (radius_.empty()) fail(ErrorCode::InvalidArgument, "box radius is empty");
  bool any_positive = false;
  for (double r : radius_) {
    if (!std::isfinite(r) || r < 0.0)
      fail(ErrorCode::InvalidArgument, "box radius entries must be finite and nonnegative");
    any_positive = any_positive || r > 0.0;
  }
  if (!any_positive) fail(ErrorCode::InvalidArgument, "box radius must have a positive entry");
}

bool HyperRect::contains(std::span<const double> x, double slack) const {
  if (x.size() != radius_.size()) fail(ErrorCode::DimensionMismatch, "point/box dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i]) > radius_[i] + slack) return false;
  return true;
}

std::vector<Vector> HyperRect::vertices() const {
  const std::size_t n = radius_.size();
  std::vector<Vector> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1U ? radius_[i] : -radius_[i];
    out.push_back(std::move(v));
  }
  return out;
}

Vector hessian_eta(const SystemModel& sys, const HyperRect& box) {
  if (!sys.interval_hessian)
    fail(ErrorCode::MissingCapability, "system '" + sys.name + "' provides no interval Hessian");
  if (box.dim() != sys.dim)
    fail(ErrorCode::DimensionMismatch, "box dimension does not match system '" + sys.name + "'");
  Vector eta(sys.dim);
  for (std::size_t i = 0; i < sys.dim; ++i) {
    const IntervalMatrix h = sys.interval_hessian(i, box);
    if (h.rows() != sys.dim || h.cols() != sys.dim)
      fail(ErrorCode::DimensionMismatch, "interval Hessian has wrong shape");
    eta[i] = norms(h.magnitude()).inf;
  }
  return eta;
}

}  // namespace doa
