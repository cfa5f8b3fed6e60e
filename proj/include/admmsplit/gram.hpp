#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "admmsplit/cholesky.hpp"
#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

/// Solver for the regularized Gram system (H* H + rho I) x = rhs.
///
/// For a wide block (rows < cols) the solve is rewritten through the matrix
/// inversion lemma,
///
///   (H* H + rho I)^-1 = I/rho - H*/rho^2 (I + H H*/rho)^-1 H,
///
/// so only a rows x rows matrix is factored; otherwise the cols x cols system
/// is factored directly. Either way the factorization is Hermitian positive
/// definite for rho > 0, computed once, and reused across iterations.
/// Immutable after construction; solve() is reentrant.
class GramSolver {
 public:
  enum class Strategy { Direct, Woodbury };

  /// Woodbury iff rows < cols. A square block ties toward Direct, which skips
  /// the lemma's two extra block products per solve.
  static Strategy strategy_for(std::size_t rows, std::size_t cols) {
    return rows < cols ? Strategy::Woodbury : Strategy::Direct;
  }

  GramSolver(std::shared_ptr<const CMatrix> block, double rho)
      : GramSolver(std::move(block), rho, std::nullopt) {}

  GramSolver(CMatrix block, double rho)
      : GramSolver(std::make_shared<const CMatrix>(std::move(block)), rho) {}

  /// Overrides the automatic strategy choice. Mainly for cross-checking the
  /// two routes against each other; the default pick is already the cheaper
  /// factorization.
  GramSolver(CMatrix block, double rho, Strategy strategy)
      : GramSolver(std::make_shared<const CMatrix>(std::move(block)), rho, strategy) {}

  GramSolver(std::shared_ptr<const CMatrix> block, double rho,
             std::optional<Strategy> strategy)
      : block_(std::move(block)),
        rho_(rho),
        strategy_(validate_and_pick(*block_, rho_, strategy)),
        factor_(inner_matrix(*block_, rho_, strategy_)) {}

  Strategy strategy() const { return strategy_; }
  double rho() const { return rho_; }
  const CMatrix& block() const { return *block_; }

  /// Dimension of the matrix that was factored.
  std::size_t inner_dim() const { return factor_.dim(); }

  /// x with (H* H + rho I) x = rhs.
  CVector solve(const CVector& rhs) const {
    if (rhs.size() != block_->cols()) {
      throw DimensionError("GramSolver::solve: rhs length " + std::to_string(rhs.size()) +
                           " != block cols " + std::to_string(block_->cols()));
    }
    if (strategy_ == Strategy::Direct) {
      return factor_.solve(rhs);
    }
    const CVector t = matvec(*block_, rhs);
    const CVector y = factor_.solve(t);
    const CVector z = adjoint_matvec(*block_, y);
    CVector x(rhs.size());
    const double rho2 = rho_ * rho_;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rhs[i] / rho_ - z[i] / rho2;
    return x;
  }

 private:
  static Strategy validate_and_pick(const CMatrix& block, double rho,
                                    std::optional<Strategy> strategy) {
    if (block.empty()) throw ParameterError("GramSolver: empty block");
    if (!(rho > 0.0)) throw ParameterError("GramSolver: rho must be positive");
    if (!all_finite(block)) throw NumericalError("GramSolver: non-finite entries in block");
    return strategy ? *strategy : strategy_for(block.rows(), block.cols());
  }

  // Direct: H* H + rho I (cols x cols). Woodbury: I + H H*/rho (rows x rows).
  // Both are Hermitian; only the lower triangle feeds the factorization, the
  // upper is mirrored for completeness. Inner sums run ascending.
  static CMatrix inner_matrix(const CMatrix& h, double rho, Strategy strategy) {
    if (strategy == Strategy::Direct) {
      const std::size_t n = h.cols();
      CMatrix a(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
          Complex acc(0.0, 0.0);
          for (std::size_t k = 0; k < h.rows(); ++k) acc += std::conj(h(k, r)) * h(k, c);
          if (r == c) acc += rho;
          a(r, c) = acc;
          a(c, r) = std::conj(acc);
        }
      }
      return a;
    }
    const std::size_t m = h.rows();
    CMatrix a(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      const Complex* row_r = h.data() + r * h.cols();
      for (std::size_t c = 0; c <= r; ++c) {
        const Complex* row_c = h.data() + c * h.cols();
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < h.cols(); ++k) acc += row_r[k] * std::conj(row_c[k]);
        acc /= rho;
        if (r == c) acc += 1.0;
        a(r, c) = acc;
        a(c, r) = std::conj(acc);
      }
    }
    return a;
  }

  std::shared_ptr<const CMatrix> block_;
  double rho_;
  Strategy strategy_;
  CholeskyFactor factor_;
};

inline GramSolver make_gram_solver(CMatrix block, double rho) {
  return GramSolver(std::move(block), rho);
}

}  // namespace admmsplit
