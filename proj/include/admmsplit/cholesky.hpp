#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

/// Cholesky factorization A = L L* of a Hermitian positive-definite matrix.
///
/// The factorization reads the lower triangle of A (the upper triangle is
/// assumed to mirror it) and is computed once; solves reuse it. Loops run in
/// ascending index order.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const CMatrix& a) : l_(factor(a)) {}

  std::size_t dim() const { return l_.rows(); }

  /// Solves A x = b via the cached factor (forward then backward substitution).
  CVector solve(const CVector& b) const {
    const std::size_t n = dim();
    if (b.size() != n) {
      throw DimensionError("CholeskyFactor::solve: rhs length " + std::to_string(b.size()) +
                           " != dimension " + std::to_string(n));
    }
    // L y = b
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = b[i];
      for (std::size_t k = 0; k < i; ++k) acc -= l_(i, k) * y[k];
      y[i] = acc / l_(i, i).real();
    }
    // L* x = y
    CVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Complex acc = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l_(k, ii)) * x[k];
      x[ii] = acc / l_(ii, ii).real();
    }
    return x;
  }

 private:
  static CMatrix factor(const CMatrix& a) {
    if (a.rows() != a.cols()) {
      throw DimensionError("CholeskyFactor: matrix must be square");
    }
    if (!all_finite(a)) {
      throw NumericalError("CholeskyFactor: non-finite entries in input matrix");
    }
    const std::size_t n = a.rows();
    CMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      double d = a(j, j).real();
      for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
      if (!(d > 0.0) || !std::isfinite(d)) {
        throw SingularityError("CholeskyFactor: pivot " + std::to_string(j) +
                               " is not positive (matrix not positive definite "
                               "or contaminated by non-finite values)");
      }
      const double ljj = std::sqrt(d);
      l(j, j) = Complex(ljj, 0.0);
      for (std::size_t i = j + 1; i < n; ++i) {
        Complex acc = a(i, j);
        for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
        l(i, j) = acc / ljj;
      }
    }
    return l;
  }

  CMatrix l_;
};

}  // namespace admmsplit
