#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "admmsplit/errors.hpp"

namespace admmsplit {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major storage.
///
/// All reductions in this library run in ascending index order; results are
/// bit-identical across repeated runs and thread counts.
class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
      throw ParameterError("CMatrix dimensions must be positive");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  /// Row-wise construction, mainly for small literals in tests and demos.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    if (rows.size() == 0 || rows.begin()->size() == 0) {
      throw ParameterError("from_rows: empty matrix literal");
    }
    CMatrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols()) {
        throw DimensionError("from_rows: ragged rows in matrix literal");
      }
      std::size_t c = 0;
      for (const auto& v : row) m(r, c++) = v;
      ++r;
    }
    return m;
  }

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector data_;
};

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const CVector& v) {
  for (const auto& z : v) {
    if (!is_finite(z)) return false;
  }
  return true;
}

inline bool all_finite(const CMatrix& m) {
  const Complex* p = m.data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!is_finite(p[i])) return false;
  }
  return true;
}

inline CVector zeros(std::size_t n) { return CVector(n, Complex(0.0, 0.0)); }

/// y = A x, summed in ascending column order.
inline CVector matvec(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", x has length " +
                         std::to_string(x.size()));
  }
  CVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex acc(0.0, 0.0);
    const Complex* row = a.data() + r * a.cols();
    for (std::size_t l = 0; l < a.cols(); ++l) acc += row[l] * x[l];
    y[r] = acc;
  }
  return y;
}

/// y = A* x (conjugate transpose applied), summed in ascending row order.
inline CVector adjoint_matvec(const CMatrix& a, const CVector& x) {
  if (a.rows() != x.size()) {
    throw DimensionError("adjoint_matvec: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", x has length " +
                         std::to_string(x.size()));
  }
  CVector y(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < a.rows(); ++k) acc += std::conj(a(k, c)) * x[k];
    y[c] = acc;
  }
  return y;
}

/// <x, y> = sum conj(x_i) y_i, ascending.
inline Complex inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw DimensionError("inner: length mismatch");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

inline double sum_sq(const CVector& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

inline double sum_sq_diff(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("sum_sq_diff: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return acc;
}

inline double norm2(const CVector& v) { return std::sqrt(sum_sq(v)); }

/// Sum of entry moduli (the l1 norm used by the regularizer).
inline double norm1(const CVector& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::abs(z);
  return acc;
}

inline double norm_inf(const CVector& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace admmsplit
