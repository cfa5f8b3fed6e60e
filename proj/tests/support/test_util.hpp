#pragma once

// Shared helpers and independent oracles for the test suite. The oracles here
// deliberately avoid the library's solve paths: the LU solver and the naive
// products are separate implementations used to cross-check them.

#include <cmath>
#include <cstdint>
#include <vector>

#include "admmsplit/linalg.hpp"
#include "admmsplit/rng.hpp"

namespace testutil {

using admmsplit::CMatrix;
using admmsplit::Complex;
using admmsplit::CVector;

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  admmsplit::Xoshiro256pp rng(seed);
  CMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = rng.next_complex_gauss();
  }
  return a;
}

inline CVector random_vector(std::size_t n, std::uint64_t seed) {
  admmsplit::Xoshiro256pp rng(seed);
  CVector v(n);
  for (auto& z : v) z = rng.next_complex_gauss();
  return v;
}

/// Naive double-loop product, written independently of admmsplit::matvec.
inline CVector naive_matvec(const CMatrix& a, const CVector& x) {
  CVector y(a.rows(), Complex(0.0, 0.0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) y[r] += a(r, c) * x[c];
  }
  return y;
}

inline CMatrix conj_transpose(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = std::conj(a(r, c));
  }
  return t;
}

/// A* A + rho I, assembled entry by entry.
inline CMatrix assemble_regularized_gram(const CMatrix& h, double rho) {
  const CMatrix ht = conj_transpose(h);
  CMatrix a(h.cols(), h.cols());
  for (std::size_t r = 0; r < h.cols(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < h.rows(); ++k) acc += ht(r, k) * h(k, c);
      a(r, c) = acc;
    }
    a(r, r) += rho;
  }
  return a;
}

/// Dense complex LU solve with partial pivoting. Independent of the library's
/// Cholesky path; used as the oracle for Gram-system solves.
inline CVector lu_solve(CMatrix a, CVector b) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
      std::swap(b[col], b[best]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      a(r, col) = f;
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  CVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Complex acc = b[ii];
    for (std::size_t c = ii + 1; c < n; ++c) acc -= a(ii, c) * x[c];
    x[ii] = acc / a(ii, ii);
  }
  return x;
}

inline double rel_error(const CVector& got, const CVector& want) {
  return std::sqrt(admmsplit::sum_sq_diff(got, want)) /
         std::max(1e-300, std::sqrt(admmsplit::sum_sq(want)));
}

inline std::uint64_t fnv1a64(const void* data, std::size_t bytes, std::uint64_t h = 0xCBF29CE484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(const CMatrix& m, std::uint64_t h = 0xCBF29CE484222325ULL) {
  return fnv1a64(m.data(), m.size() * sizeof(Complex), h);
}

inline std::uint64_t fnv1a64(const CVector& v, std::uint64_t h = 0xCBF29CE484222325ULL) {
  return fnv1a64(v.data(), v.size() * sizeof(Complex), h);
}

}  // namespace testutil
