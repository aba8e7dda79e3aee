// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/linalg.hpp"

namespace doa {

// Closed interval [lo, hi]. Plain floating arithmetic, no directed rounding.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double point);  // NOLINT(google-explicit-constructor): degenerate interval
  Interval(double lo, double hi);

  double mag() const noexcept;  // max |x| over the interval
  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& inner) const noexcept {
    return lo <= inner.lo && inner.hi <= hi;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval iv_sin(const Interval& a);
Interval iv_cos(const Interval& a);

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols);  // all entries [0,0]

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Interval& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  Interval& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  // Entrywise max(|lo|, |hi|).
  Matrix magnitude() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> data_;
};

// Origin-centred box [-radius, radius].
class HyperRect {
 public:
  explicit HyperRect(Vector radius);

  std::size_t dim() const noexcept { return radius_.size(); }
  const Vector& radius() const noexcept { return radius_; }
  Interval interval(std::size_t i) const { return {-radius_[i], radius_[i]}; }
  bool contains(std::span<const double> x, double slack = 0.0) const;

  // All 2^n corners, in binary counting order (bit i set means +radius_i).
  std::vector<Vector> vertices() const;

 private:
  Vector radius_;
};

struct SystemModel;

// Per-component bound eta_i with |f_i(x) - (Df(0) x)_i| <= 0.5 eta_i ||x||^2 on
// the box: eta_i is the infinity norm of the magnitude matrix of the interval
// Hessian of f_i, which dominates the spectral norm of every enclosed
// symmetric matrix.
Vector hessian_eta(const SystemModel& sys, const HyperRect& box);

}  // namespace doa
