// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace doa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got)
    fail(ErrorCode::DimensionMismatch, "level function expects dimension " + std::to_string(expected) +
                                           ", got " + std::to_string(got));
}

double inf_norm_of_product(const Matrix& m, std::span<const double> x) {
  double out = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    if (std::isnan(s)) return s;
    out = std::max(out, std::fabs(s));
  }
  return out;
}

}  // namespace

LevelFunction LevelFunction::quadratic(Matrix p, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorCode::InvalidArgument, "quadratic level must be positive");
  if (!p.square() || p.empty()) fail(ErrorCode::DimensionMismatch, "quadratic form must be square");
  if (!is_symmetric(p)) fail(ErrorCode::NotSymmetric, "quadratic form is not symmetric");
  if (!is_positive_definite(p)) fail(ErrorCode::NotPositiveDefinite, "quadratic form is not positive definite");
  const std::size_t n = p.rows();
  return LevelFunction(Quadratic{std::move(p), c}, n);
}

LevelFunction LevelFunction::weighted_inf_norm(Matrix e) {
  if (e.empty()) fail(ErrorCode::DimensionMismatch, "weight matrix is empty");
  const std::size_t n = e.cols();
  return LevelFunction(WeightedInfNorm{std::move(e)}, n);
}

LevelFunction LevelFunction::stacked_inf_norm(std::vector<Matrix> blocks) {
  if (blocks.empty() || blocks.front().empty()) fail(ErrorCode::DimensionMismatch, "no blocks given");
  const std::size_t n = blocks.front().cols();
  for (const Matrix& b : blocks)
    if (b.cols() != n) fail(ErrorCode::DimensionMismatch, "stacked blocks disagree on column count");
  return LevelFunction(StackedInfNorm{std::move(blocks)}, n);
}

bool LevelFunction::is_norm() const noexcept {
  return std::holds_alternative<WeightedInfNorm>(node_) || std::holds_alternative<StackedInfNorm>(node_);
}

double LevelFunction::eval_leaf(std::span<const double> x) const {
  return std::visit(
      overloaded{
          [&](const Quadratic& q) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
              double row = 0.0;
              for (std::size_t j = 0; j < dim_; ++j) row += q.p(i, j) * x[j];
              s += x[i] * row;
            }
            return s / q.c;
          },
          [&](const WeightedInfNorm& w) { return inf_norm_of_product(w.e, x); },
          [&](const StackedInfNorm& s) {
            double out = 0.0;
            for (const Matrix& b : s.blocks) {
              const double v = inf_norm_of_product(b, x);
              if (std::isnan(v)) return v;
              out = std::max(out, v);
            }
            return out;
          },
          [&](const MaxCompose& m) { return m.h->eval(x); },  // unreachable from eval()
      },
      node_);
}

double LevelFunction::eval(std::span<const double> x) const {
  require_dim(dim_, x.size());
  // Walk the g-chain iteratively so deep compositions never recurse.
  const LevelFunction* fn = this;
  Vector y(x.begin(), x.end());
  double acc = -std::numeric_limits<double>::infinity();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  while (const auto* mc = std::get_if<MaxCompose>(&fn->node_)) {
    const double hv = mc->h->eval(y);
    if (std::isnan(hv)) return kInf;
    acc = std::max(acc, hv);
    y = (*mc->map)(y);
    fn = mc->g.get();
  }
  const double tail = fn->eval_leaf(y);
  return std::isnan(tail) ? kInf : std::max(acc, tail);
}

LevelFunction preimage_intersect(const LevelFunction& g, const LevelFunction& h, SystemPtr sys) {
  if (!sys) fail(ErrorCode::InvalidArgument, "preimage_intersect needs a system");
  require_dim(sys->dim, g.dim());
  require_dim(sys->dim, h.dim());
  LevelFunction out(
      LevelFunction::MaxCompose{std::make_shared<const LevelFunction>(g),
                                std::make_shared<const LevelFunction>(h), std::move(sys)},
      g.dim());
  const Vector zero(out.dim(), 0.0);
  if (!(std::fabs(out.eval(zero)) <= 1e-12))
    fail(ErrorCode::NotAnEquilibrium, "composed level function does not vanish at the origin");
  return out;
}

}  // namespace doa
