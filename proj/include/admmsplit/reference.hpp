#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "admmsplit/admm_core.hpp"
#include "admmsplit/errors.hpp"
#include "admmsplit/gram.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/metrics.hpp"
#include "admmsplit/problem.hpp"
#include "admmsplit/prox.hpp"
#include "admmsplit/report.hpp"

namespace admmsplit {

/// Single-node scaled-dual ADMM for the lasso problem
///
///   minimize 0.5 ||H u - g||^2 + lambda ||v||_1   s.t.  u - v = 0,
///
/// iterating u <- (H*H + rho I)^-1 (H*g + rho(v - s)), v <- S_{lambda/rho}(u + s),
/// s <- s + u - v from u = v = s = 0. Returns the final v; the trace records
/// ||r_p|| = ||u - v||, ||r_d|| = rho ||v - v_prev||, and the objective at v.
/// cfg.scl rescales H and g jointly before solving (see apply_scaling); the
/// reported objective refers to the scaled problem.
inline SolveReport lasso_admm_reference(const SensingProblem& problem, const SolverConfig& cfg,
                                        const SolveOptions& opts = {}) {
  cfg.validate();
  problem.validate();

  const SensingProblem* work = &problem;
  SensingProblem scaled;
  if (cfg.scl != 1.0) {
    scaled = apply_scaling(problem, cfg.scl);
    scaled.validate();
    work = &scaled;
  }
  const CMatrix& h = work->h;
  const CVector& g = work->g;

  const double rho = cfg.rho;
  const double kappa = cfg.lambda / rho;
  const GramSolver gram(h, rho);
  const CVector hg = adjoint_matvec(h, g);

  const std::size_t n = h.cols();
  CVector u = zeros(n);
  CVector v = zeros(n);
  CVector s = zeros(n);

  SolveReport report;
  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    const CVector rhs = kernel::gram_rhs(hg, v, s, rho);
    u = gram.solve(rhs);
    if (!all_finite(u)) {
      throw NumericalError("lasso_admm_reference: non-finite iterate at iteration " +
                               std::to_string(k + 1),
                           k);
    }
    const CVector w = kernel::combine(u, s);
    CVector v_prev = std::move(v);
    v = soft_threshold_vec(w, kappa);
    kernel::dual_update(s, u, v);

    const double rp = std::sqrt(sum_sq_diff(u, v));
    const double dual_sum = sum_sq_diff(v, v_prev);
    const double rd = std::sqrt(rho * rho * dual_sum);
    const double obj = objective_value(h, g, v, cfg.lambda);
    report.trace.push(rp, rd, obj);
    report.iterations_run = k + 1;

    if (opts.observer) {
      IterateSnapshot snap;
      snap.iteration = k + 1;
      snap.v = v;
      snap.v_prev = v_prev;
      snap.replica_u = {u};
      snap.segment_v = {v};
      snap.segment_v_prev = {std::move(v_prev)};
      opts.observer(snap);
    }
    if (stop_now(cfg, rp, rd)) break;
  }

  report.solution = v;
  report.objective = report.trace.objective.back();
  if (problem.truth) report.metrics = recovery_metrics(report.solution, *problem.truth);
  return report;
}

}  // namespace admmsplit
