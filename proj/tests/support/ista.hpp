#pragma once

// Proximal-gradient (ISTA) lasso oracle, independent of the ADMM solve path.
// Uses its own shrinkage and the naive products from test_util so that
// agreement with the solvers is a genuine cross-check.

#include <cmath>
#include <cstddef>

#include "admmsplit/linalg.hpp"
#include "support/test_util.hpp"

namespace testutil {

struct IstaResult {
  CVector solution;
  double objective = 0.0;
  std::size_t iterations = 0;
};

inline double lasso_objective(const CMatrix& h, const CVector& g, const CVector& x,
                              double lambda) {
  const CVector hx = naive_matvec(h, x);
  double quad = 0.0;
  for (std::size_t i = 0; i < hx.size(); ++i) quad += std::norm(hx[i] - g[i]);
  double l1 = 0.0;
  for (const auto& z : x) l1 += std::abs(z);
  return 0.5 * quad + lambda * l1;
}

/// Largest eigenvalue of H* H by fixed-count power iteration.
inline double gram_spectral_norm(const CMatrix& h) {
  const CMatrix ht = conj_transpose(h);
  CVector b(h.cols(), Complex(1.0, 0.0));
  double lambda_max = 1.0;
  for (int it = 0; it < 300; ++it) {
    const CVector hb = naive_matvec(h, b);
    const CVector ghb = naive_matvec(ht, hb);
    lambda_max = std::sqrt(admmsplit::sum_sq(ghb)) / std::sqrt(admmsplit::sum_sq(b));
    const double scale = 1.0 / std::sqrt(admmsplit::sum_sq(ghb));
    b.resize(ghb.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = ghb[i] * scale;
  }
  return lambda_max;
}

/// Runs x <- shrink(x - t H*(Hx - g), t lambda) with t = 1/(1.01 L) until the
/// objective decrease stays below `stagnation` (relative) for five straight
/// iterations.
inline IstaResult ista_lasso(const CMatrix& h, const CVector& g, double lambda,
                             double stagnation = 1e-10, std::size_t max_iters = 200000) {
  const CMatrix ht = conj_transpose(h);
  const double step = 1.0 / (1.01 * gram_spectral_norm(h));
  const double kappa = step * lambda;

  CVector x(h.cols(), Complex(0.0, 0.0));
  double obj = lasso_objective(h, g, x, lambda);
  IstaResult result;
  int stalled = 0;
  for (std::size_t k = 0; k < max_iters; ++k) {
    const CVector hx = naive_matvec(h, x);
    CVector resid(hx.size());
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = hx[i] - g[i];
    const CVector grad = naive_matvec(ht, resid);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Complex z = x[i] - step * grad[i];
      const double mag = std::abs(z);
      x[i] = mag > kappa ? z * (1.0 - kappa / mag) : Complex(0.0, 0.0);
    }
    const double next_obj = lasso_objective(h, g, x, lambda);
    result.iterations = k + 1;
    if (obj - next_obj <= stagnation * std::max(1.0, std::abs(obj))) {
      if (++stalled >= 5) {
        obj = next_obj;
        break;
      }
    } else {
      stalled = 0;
    }
    obj = next_obj;
  }
  result.solution = std::move(x);
  result.objective = obj;
  return result;
}

}  // namespace testutil
