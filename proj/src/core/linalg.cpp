// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace doa {

namespace {

void require_finite(const std::vector<double>& data) {
  for (double v : data) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "matrix entry is not finite");
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const Matrix& m, const char* what) {
  if (!m.square() || m.empty()) {
    fail(ErrorCode::DimensionMismatch, std::string(what) + " must be square, got " + shape(m));
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorCode::DimensionMismatch, "matrix entry count does not match " +
                                           std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::abs() const {
  Matrix m = *this;
  for (double& v : m.data_) v = std::fabs(v);
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "cannot add " + shape(a) + " and " + shape(b));
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch, "cannot subtract " + shape(b) + " from " + shape(a));
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    fail(ErrorCode::DimensionMismatch, "cannot multiply " + shape(a) + " by " + shape(b));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size())
    fail(ErrorCode::DimensionMismatch,
         "cannot apply " + shape(a) + " to a vector of length " + std::to_string(x.size()));
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::fabs(v));
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool is_symmetric(const Matrix& m, double tol) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

SymEig sym_eig(const Matrix& m) {
  require_square(m, "sym_eig input");
  if (!is_symmetric(m)) fail(ErrorCode::NotSymmetric, "sym_eig input is not symmetric");

  const std::size_t n = m.rows();
  Matrix a = symmetrize(m);
  Matrix v = Matrix::identity(n);
  const double scale = frobenius(a);
  const double tol = 1e-14 * scale;

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (scale > 0.0 && off_diagonal_norm(a) >= tol) {
    if (++sweep > kMaxSweeps) fail(ErrorCode::NotConverged, "Jacobi sweeps did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p,q), using the smaller root for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEig out{Vector(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

namespace {

Matrix spectral_map(const SymEig& eig, double (*fn)(double)) {
  const std::size_t n = eig.values.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = fn(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += eig.vectors(i, k) * w * eig.vectors(j, k);
  }
  return symmetrize(out);
}

SymEig spd_eig(const Matrix& m) {
  SymEig eig = sym_eig(m);
  if (eig.min() <= 1e-12) {
    fail(ErrorCode::NotPositiveDefinite,
         "matrix is not positive definite (min eigenvalue " + std::to_string(eig.min()) + ")");
  }
  return eig;
}

}  // namespace

Matrix sqrt_spd(const Matrix& m) {
  return spectral_map(spd_eig(m), [](double x) { return std::sqrt(x); });
}

Matrix inv_sqrt_spd(const Matrix& m) {
  return spectral_map(spd_eig(m), [](double x) { return 1.0 / std::sqrt(x); });
}

bool is_positive_definite(const Matrix& m) {
  if (!is_symmetric(m)) return false;
  return sym_eig(m).min() > 0.0;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  require_square(a, "linear system matrix");
  if (b.rows() != a.rows())
    fail(ErrorCode::DimensionMismatch, "right-hand side " + shape(b) + " does not match " + shape(a));
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  const double threshold = 1e-13 * norms(a).inf;
  Matrix lu = a;
  Matrix x = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(lu(r, col)) > std::fabs(lu(piv, col))) piv = r;
    if (!(std::fabs(lu(piv, col)) >= threshold) || lu(piv, col) == 0.0)
      fail(ErrorCode::SingularMatrix, "matrix is singular to working precision");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(col, j), x(piv, j));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu(r, col) / lu(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < m; ++j) x(r, j) -= f * x(col, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * x(k, j);
      x(ii, j) = s / lu(ii, ii);
    }
  }
  return x;
}

Vector solve(const Matrix& a, std::span<const double> b) {
  return solve(a, Matrix::column(b)).entries();
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse input");
  return solve(a, Matrix::identity(a.rows()));
}

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double v : m.entries()) s += v * v;
  return std::sqrt(s);
}

MatrixNorms norms(const Matrix& m) {
  MatrixNorms out;
  out.frobenius = frobenius(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::fabs(v);
    out.inf = std::max(out.inf, s);
  }
  if (!m.empty()) {
    const SymEig eig = sym_eig(symmetrize(m.transpose() * m));
    out.spectral = std::sqrt(std::max(0.0, eig.max()));
  }
  return out;
}

double dlyap_residual(const Matrix& a, const Matrix& p, const Matrix& q) {
  return frobenius(a.transpose() * p * a - p + q);
}

Matrix solve_dlyap(const Matrix& a, const Matrix& q) {
  require_square(a, "A");
  require_square(q, "Q");
  if (a.rows() != q.rows())
    fail(ErrorCode::DimensionMismatch, "A is " + shape(a) + " but Q is " + shape(q));
  if (!is_symmetric(q) || !is_positive_definite(q))
    fail(ErrorCode::NotPositiveDefinite, "Q must be symmetric positive definite");

  const std::size_t n = a.rows();
  const std::size_t nn = n * n;
  // Row (i,j) of the system: sum_{k,l} A(k,i) P(k,l) A(l,j) - P(i,j) = -Q(i,j).
  Matrix kron(nn, nn);
  Vector rhs(nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      rhs[row] = -q(i, j);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) kron(row, k * n + l) = a(k, i) * a(l, j);
      kron(row, row) -= 1.0;
    }

  Vector vec_p;
  try {
    vec_p = solve(kron, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    fail(ErrorCode::NoUniqueSolution,
         "Lyapunov equation has no unique solution (A has reciprocal eigenvalue pair)");
  }
  const Matrix p = symmetrize(Matrix(n, n, std::move(vec_p)));

  const double residual = dlyap_residual(a, p, q);
  if (!(residual < 1e-9 * frobenius(q)))
    fail(ErrorCode::NumericalFailure,
         "Lyapunov residual " + std::to_string(residual) + " exceeds tolerance");
  if (sym_eig(p).min() <= 0.0)
    fail(ErrorCode::SchurUnstable,
         "Lyapunov solution is not positive definite: A is not Schur stable");
  return p;
}

double dare_residual(const Matrix& a, const Matrix& b, const Matrix& q, const Matrix& r,
                     const Matrix& p) {
  const Matrix at = a.transpose();
  const Matrix bt_p_a = b.transpose() * p * a;
  const Matrix gain = solve(r + b.transpose() * p * b, bt_p_a);
  return frobenius(q + at * p * a - bt_p_a.transpose() * gain - p);
}

DareSolution solve_dare(const Matrix& a, const Matrix& b, const Matrix& q, const Matrix& r) {
  require_square(a, "A");
  require_square(q, "Q");
  require_square(r, "R");
  if (b.rows() != a.rows() || q.rows() != a.rows() || r.rows() != b.cols())
    fail(ErrorCode::DimensionMismatch, "inconsistent Riccati dimensions: A " + shape(a) + ", B " +
                                           shape(b) + ", Q " + shape(q) + ", R " + shape(r));
  if (!is_positive_definite(q)) fail(ErrorCode::NotPositiveDefinite, "Q must be symmetric positive definite");
  if (!is_positive_definite(r)) fail(ErrorCode::NotPositiveDefinite, "R must be symmetric positive definite");

  constexpr std::size_t kMaxIterations = 100000;
  const Matrix at = a.transpose();
  const Matrix bt = b.transpose();
  Matrix p = q;
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    if (!(frobenius(p) < 1e150))
      fail(ErrorCode::NotConverged, "Riccati iteration diverged; (A, B) may not be stabilizable");
    const Matrix bt_p_a = bt * p * a;
    const Matrix next =
        symmetrize(q + at * p * a - bt_p_a.transpose() * solve(r + bt * p * b, bt_p_a));
    const double step = frobenius(next - p);
    const double ref = frobenius(p);
    p = next;
    if (step < 1e-12 * ref) {
      const double residual = dare_residual(a, b, q, r, p);
      if (!(residual < 1e-8 * frobenius(p)))
        fail(ErrorCode::NumericalFailure, "Riccati residual " + std::to_string(residual) + " exceeds tolerance");
      return {p, solve(r + bt * p * b, bt * p * a), it};
    }
  }
  fail(ErrorCode::NotConverged, "Riccati iteration did not converge; (A, B) may not be stabilizable");
}

}  // namespace doa
