// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/system.hpp"

#include <string>

#include "core/error.hpp"

namespace doa {

Vector SystemModel::operator()(std::span<const double> x) const {
  if (x.size() != dim)
    fail(ErrorCode::DimensionMismatch, "system '" + name + "' expects dimension " +
                                           std::to_string(dim) + ", got " + std::to_string(x.size()));
  return step(x);
}

void validate(const SystemModel& sys) {
  if (sys.dim == 0 || !sys.step) fail(ErrorCode::InvalidArgument, "system '" + sys.name + "' is incomplete");
  if (sys.jacobian_origin.rows() != sys.dim || sys.jacobian_origin.cols() != sys.dim)
    fail(ErrorCode::DimensionMismatch, "Jacobian of '" + sys.name + "' has wrong shape");
  const Vector zero(sys.dim, 0.0);
  const Vector f0 = sys(zero);
  if (f0.size() != sys.dim) fail(ErrorCode::DimensionMismatch, "step of '" + sys.name + "' returns wrong size");
  if (!(norm2(f0) < 1e-12))
    fail(ErrorCode::NotAnEquilibrium, "origin is not an equilibrium of '" + sys.name + "'");
}

SystemPtr make_linear_system(std::string name, Matrix a) {
  if (!a.square() || a.empty()) fail(ErrorCode::DimensionMismatch, "linear system matrix must be square");
  auto sys = std::make_shared<SystemModel>();
  sys->name = std::move(name);
  sys->dim = a.rows();
  sys->step = [a](std::span<const double> x) { return a * x; };
  sys->jacobian_origin = a;
  const std::size_t n = a.rows();
  sys->interval_hessian = [n](std::size_t, const HyperRect&) { return IntervalMatrix(n, n); };
  return sys;
}

Matrix finite_difference_jacobian(const SystemModel& sys, std::span<const double> x, double h) {
  Matrix jac(sys.dim, sys.dim);
  Vector xp(x.begin(), x.end());
  Vector xm(x.begin(), x.end());
  for (std::size_t j = 0; j < sys.dim; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const Vector fp = sys(xp);
    const Vector fm = sys(xm);
    for (std::size_t i = 0; i < sys.dim; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return jac;
}

}  // namespace doa
