// Copyright 2026 The safedoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace doa {

using Vector = std::vector<double>;

// Dense row-major matrix sized for the small systems handled here (n <= 8).
// Entries are always finite; constructors reject NaN/Inf.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& entries() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix transpose() const;
  Matrix abs() const;  // entrywise
  double trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

// Symmetric eigendecomposition. Eigenvalues ascending; eigenvectors are the
// columns of `vectors`, orthonormal.
struct SymEig {
  Vector values;
  Matrix vectors;

  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

struct MatrixNorms {
  double spectral = 0.0;
  double inf = 0.0;
  double frobenius = 0.0;
};

bool is_symmetric(const Matrix& m, double tol = 1e-12);
Matrix symmetrize(const Matrix& m);

// Cyclic Jacobi rotations, sweeping row-major over the upper triangle until
// the off-diagonal Frobenius norm drops below 1e-14 * ||M||_F.
SymEig sym_eig(const Matrix& m);

Matrix sqrt_spd(const Matrix& m);
Matrix inv_sqrt_spd(const Matrix& m);
bool is_positive_definite(const Matrix& m);

// Gaussian elimination with partial pivoting. A pivot smaller than
// 1e-13 * ||M||_inf is treated as singular.
Matrix solve(const Matrix& a, const Matrix& b);
Vector solve(const Matrix& a, std::span<const double> b);
Matrix inverse(const Matrix& a);

MatrixNorms norms(const Matrix& m);
double frobenius(const Matrix& m);

// Solves A^T P A - P = -Q through the n^2 x n^2 Kronecker system. A solution
// that is not positive definite means A is not Schur stable, which is reported
// as ErrorCode::SchurUnstable.
Matrix solve_dlyap(const Matrix& a, const Matrix& q);

struct DareSolution {
  Matrix p;
  Matrix k;  // (R + B^T P B)^{-1} B^T P A, so that A - B K is stable
  std::size_t iterations = 0;
};

// Riccati value iteration from P = Q.
DareSolution solve_dare(const Matrix& a, const Matrix& b, const Matrix& q,
                        const Matrix& r);

double dlyap_residual(const Matrix& a, const Matrix& p, const Matrix& q);
double dare_residual(const Matrix& a, const Matrix& b, const Matrix& q,
                     const Matrix& r, const Matrix& p);

}  // namespace doa
