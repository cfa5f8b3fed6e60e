#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "admmsplit/admm_core.hpp"
#include "admmsplit/comm.hpp"
#include "admmsplit/errors.hpp"
#include "admmsplit/gram.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/metrics.hpp"
#include "admmsplit/parallel.hpp"
#include "admmsplit/partition.hpp"
#include "admmsplit/problem.hpp"
#include "admmsplit/prox.hpp"
#include "admmsplit/reference.hpp"
#include "admmsplit/report.hpp"

// The three distributed solvers run a synchronous simulated multi-node
// runtime. Each worker owns its block and its local iterates and sees other
// nodes' data only through vectors delivered by the coordinator between
// phases; every delivered or sent payload is metered in the CommLedger
// (SenderOnceBroadcast semantics: a broadcast payload is counted once on the
// sender, whatever the fan-out). Workers within a phase may run on several
// threads; all cross-worker reductions happen on the coordinator in ascending
// index order, so any thread count produces bit-identical results. Residual
// and trace computation reads worker state out of band and is not metered.

namespace admmsplit {

namespace detail {

inline const SensingProblem* maybe_scale(const SensingProblem& problem, const SolverConfig& cfg,
                                         SensingProblem& storage) {
  cfg.validate();
  problem.validate();
  if (cfg.scl == 1.0) return &problem;
  storage = apply_scaling(problem, cfg.scl);
  storage.validate();
  return &storage;
}

inline void check_workers_finite(const std::vector<bool>& ok, std::size_t iteration,
                                 const char* solver) {
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!ok[i]) {
      throw NumericalError(std::string(solver) + ": non-finite iterate at node " +
                               std::to_string(i) + ", iteration " + std::to_string(iteration + 1),
                           iteration);
    }
  }
}

inline void finalize_report(SolveReport& report, const SensingProblem& original) {
  report.objective = report.trace.objective.back();
  if (original.truth) report.metrics = recovery_metrics(report.solution, *original.truth);
}

}  // namespace detail

/// Row-split (consensus) ADMM with M replicas of the full unknown.
///
/// Worker i keeps (H_i, g_i) and iterates
///   u^i <- (H_i* H_i + rho I)^-1 (H_i* g_i + rho (v - s^i)),
/// the central node soft-thresholds the ascending-order mean,
///   v <- S_{lambda/(M rho)}(u-bar + s-bar),
/// and each worker then updates s^i <- s^i + u^i - v. Per iteration every
/// worker receives v (N_p elements) and sends back u^i + s^i (N_p elements),
/// the 2 N_p exchange of the closed-form count.
inline SolveReport consensus_solve(const SensingProblem& problem, const SolverConfig& cfg,
                                   std::size_t m, const SolveOptions& opts = {}) {
  SensingProblem scaled_storage;
  const SensingProblem* work = detail::maybe_scale(problem, cfg, scaled_storage);
  const std::size_t n_pix = work->n_pix();
  const PartitionSpec spec = make_partition(work->n_meas(), n_pix, m, 1, opts.ragged);

  struct Worker {
    CMatrix h;
    CVector g;
    std::unique_ptr<GramSolver> gram;
    CVector hg;  // H_i* g_i, iteration-invariant
    CVector u, s;
    CVector inbox_v;
    CVector outbox_w;  // u + s
    bool ok = true;
  };

  std::vector<Worker> workers(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto [hi, gi] = row_block(*work, spec, i);
    workers[i].h = std::move(hi);
    workers[i].g = std::move(gi);
    workers[i].gram = std::make_unique<GramSolver>(workers[i].h, cfg.rho);
    workers[i].hg = adjoint_matvec(workers[i].h, workers[i].g);
    workers[i].u = zeros(n_pix);
    workers[i].s = zeros(n_pix);
  }

  const double rho = cfg.rho;
  const double kappa = cfg.lambda / (static_cast<double>(m) * rho);
  CVector v = zeros(n_pix);
  SolveReport report;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      workers[i].inbox_v = v;
      report.ledger.record_recv(i, k, n_pix);
    }

    parallel_for(m, opts.threads, [&](std::size_t i) {
      Worker& w = workers[i];
      if (k > 0) kernel::dual_update(w.s, w.u, w.inbox_v);
      const CVector rhs = kernel::gram_rhs(w.hg, w.inbox_v, w.s, rho);
      w.u = w.gram->solve(rhs);
      w.ok = all_finite(w.u);
      w.outbox_w = kernel::combine(w.u, w.s);
    });

    {
      std::vector<bool> ok(m);
      for (std::size_t i = 0; i < m; ++i) ok[i] = workers[i].ok;
      detail::check_workers_finite(ok, k, "consensus_solve");
    }
    for (std::size_t i = 0; i < m; ++i) report.ledger.record_send(i, k, n_pix);

    CVector mean_w = zeros(n_pix);
    for (std::size_t i = 0; i < m; ++i) {
      const CVector& w = workers[i].outbox_w;
      for (std::size_t t = 0; t < n_pix; ++t) mean_w[t] += w[t];
    }
    const double inv_count = static_cast<double>(m);
    for (std::size_t t = 0; t < n_pix; ++t) mean_w[t] /= inv_count;

    CVector v_prev = std::move(v);
    v = soft_threshold_vec(mean_w, kappa);

    double rp2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) rp2 += sum_sq_diff(workers[i].u, v);
    const double dual_sum = sum_sq_diff(v, v_prev);
    const double rp = std::sqrt(rp2);
    const double rd = std::sqrt(rho * rho * static_cast<double>(m) * dual_sum);
    const double obj = objective_value(work->h, work->g, v, cfg.lambda);
    report.trace.push(rp, rd, obj);
    report.iterations_run = k + 1;

    if (opts.observer) {
      IterateSnapshot snap;
      snap.iteration = k + 1;
      snap.v = v;
      snap.v_prev = v_prev;
      snap.replica_u.reserve(m);
      for (const Worker& w : workers) snap.replica_u.push_back(w.u);
      snap.segment_v = {v};
      snap.segment_v_prev = {std::move(v_prev)};
      opts.observer(snap);
    }
    if (stop_now(cfg, rp, rd)) break;
  }

  report.solution = std::move(v);
  detail::finalize_report(report, problem);
  return report;
}

/// Column-split (sectioning) ADMM over N segments of the unknown.
///
/// Worker j owns H_j and the segment iterates (u_j, v_j, s_j). Each iteration
/// it rebuilds its share of the data from the peers' estimated-data vectors,
///   g_j = g - sum_{q != j} ghat_q,      ghat_q = H_q u_q,
/// solves u_j <- (H_j* H_j + rho I)^-1 (H_j* g_j + rho (v_j - s_j)), applies
/// v_j <- S_{lambda/rho}(u_j + s_j) and the dual update locally, and
/// broadcasts its refreshed ghat_j (N_m elements, counted once) while
/// receiving N-1 peer vectors — the N * N_m closed-form exchange. The
/// solution is the concatenation [v_1; ...; v_N].
inline SolveReport sectioning_solve(const SensingProblem& problem, const SolverConfig& cfg,
                                    std::size_t n, const SolveOptions& opts = {}) {
  SensingProblem scaled_storage;
  const SensingProblem* work = detail::maybe_scale(problem, cfg, scaled_storage);
  const std::size_t n_meas = work->n_meas();
  const std::size_t n_pix = work->n_pix();
  const PartitionSpec spec = make_partition(n_meas, n_pix, 1, n, opts.ragged);

  struct Worker {
    CMatrix h;
    std::unique_ptr<GramSolver> gram;
    CVector u, v, s, v_prev;
    CVector ghat;                     // H_j u_j from the latest local update
    std::vector<CVector> inbox_ghat;  // peer ghat_q, slot q (own slot unused)
    double rp2 = 0.0, rd2 = 0.0;
    bool ok = true;
  };

  std::vector<Worker> workers(n);
  for (std::size_t j = 0; j < n; ++j) {
    Worker& w = workers[j];
    w.h = col_block(*work, spec, j);
    w.gram = std::make_unique<GramSolver>(w.h, cfg.rho);
    const std::size_t len = spec.col_size(j);
    w.u = zeros(len);
    w.v = zeros(len);
    w.s = zeros(len);
    w.v_prev = zeros(len);
    w.ghat = zeros(n_meas);
    w.inbox_ghat.assign(n, CVector());
  }

  const double rho = cfg.rho;
  const double kappa = cfg.lambda / rho;
  const CVector& g = work->g;
  SolveReport report;
  CVector v_full;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      report.ledger.record_broadcast(j, k, n_meas, n - 1);
      for (std::size_t q = 0; q < n; ++q) {
        if (q == j) continue;
        workers[q].inbox_ghat[j] = workers[j].ghat;
        report.ledger.record_recv(q, k, n_meas);
      }
    }

    parallel_for(n, opts.threads, [&](std::size_t j) {
      Worker& w = workers[j];
      CVector gj = g;
      for (std::size_t q = 0; q < n; ++q) {
        if (q == j) continue;
        const CVector& peer = w.inbox_ghat[q];
        for (std::size_t t = 0; t < n_meas; ++t) gj[t] -= peer[t];
      }
      const CVector hg = adjoint_matvec(w.h, gj);
      const CVector rhs = kernel::gram_rhs(hg, w.v, w.s, rho);
      w.u = w.gram->solve(rhs);
      w.ok = all_finite(w.u);
      const CVector comb = kernel::combine(w.u, w.s);
      w.v_prev = w.v;
      w.v = soft_threshold_vec(comb, kappa);
      kernel::dual_update(w.s, w.u, w.v);
      w.ghat = matvec(w.h, w.u);
      w.rp2 = sum_sq_diff(w.u, w.v);
      w.rd2 = sum_sq_diff(w.v, w.v_prev);
    });

    {
      std::vector<bool> ok(n);
      for (std::size_t j = 0; j < n; ++j) ok[j] = workers[j].ok;
      detail::check_workers_finite(ok, k, "sectioning_solve");
    }

    double rp2 = 0.0, dual_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      rp2 += workers[j].rp2;
      dual_sum += workers[j].rd2;
    }
    const double rp = std::sqrt(rp2);
    const double rd = std::sqrt(rho * rho * dual_sum);

    v_full.clear();
    v_full.reserve(n_pix);
    for (std::size_t j = 0; j < n; ++j) {
      v_full.insert(v_full.end(), workers[j].v.begin(), workers[j].v.end());
    }
    const double obj = objective_value(work->h, g, v_full, cfg.lambda);
    report.trace.push(rp, rd, obj);
    report.iterations_run = k + 1;

    if (opts.observer) {
      IterateSnapshot snap;
      snap.iteration = k + 1;
      snap.v = v_full;
      snap.v_prev.reserve(n_pix);
      for (std::size_t j = 0; j < n; ++j) {
        snap.v_prev.insert(snap.v_prev.end(), workers[j].v_prev.begin(), workers[j].v_prev.end());
      }
      for (const Worker& w : workers) {
        snap.replica_u.push_back(w.u);
        snap.segment_v.push_back(w.v);
        snap.segment_v_prev.push_back(w.v_prev);
      }
      opts.observer(snap);
    }
    if (stop_now(cfg, rp, rd)) break;
  }

  report.solution = std::move(v_full);
  detail::finalize_report(report, problem);
  return report;
}

/// Grid-split (consensus-and-sectioning) ADMM: M replicas of each of N
/// segments.
///
/// Sub-node (i, j) owns H_ij and g_i, rebuilds its data share from the
/// same-replica peers' estimated-data vectors,
///   g_ij = g_i - sum_{q != j} ghat_iq,    ghat_iq = H_iq u_q^i,
/// solves for u_j^i, and sends u_j^i + s_j^i to segment j's central node,
/// which soft-thresholds the replica mean: v_j <- S_{lambda/(M rho)}.
/// Per iteration each sub-node receives v_j (N_p/N) and N-1 estimated-data
/// vectors (N_m/M each), sends its update (N_p/N) and broadcasts its ghat_ij
/// (N_m/M, counted once): N*N_m/M + 2*N_p/N elements, the closed-form count.
/// Workers are numbered id = i*N + j.
inline SolveReport hybrid_solve(const SensingProblem& problem, const SolverConfig& cfg,
                                std::size_t m, std::size_t n, const SolveOptions& opts = {}) {
  SensingProblem scaled_storage;
  const SensingProblem* work = detail::maybe_scale(problem, cfg, scaled_storage);
  const std::size_t n_pix = work->n_pix();
  const PartitionSpec spec = make_partition(work->n_meas(), n_pix, m, n, opts.ragged);

  struct Worker {
    CMatrix h;  // H_ij
    CVector g;  // g_i
    std::unique_ptr<GramSolver> gram;
    CVector u, s;                     // segment-length iterates
    CVector ghat;                     // H_ij u_j^i, row-block length
    std::vector<CVector> inbox_ghat;  // ghat_iq for q != j
    CVector inbox_v;
    CVector outbox_w;  // u + s
    bool ok = true;
  };

  const std::size_t n_workers = m * n;
  std::vector<Worker> workers(n_workers);
  for (std::size_t i = 0; i < m; ++i) {
    const CVector gi(work->g.begin() + static_cast<std::ptrdiff_t>(spec.row_bounds[i]),
                     work->g.begin() + static_cast<std::ptrdiff_t>(spec.row_bounds[i + 1]));
    for (std::size_t j = 0; j < n; ++j) {
      Worker& w = workers[i * n + j];
      w.h = grid_block(*work, spec, i, j);
      w.g = gi;
      w.gram = std::make_unique<GramSolver>(w.h, cfg.rho);
      const std::size_t len = spec.col_size(j);
      w.u = zeros(len);
      w.s = zeros(len);
      w.ghat = zeros(spec.row_size(i));
      w.inbox_ghat.assign(n, CVector());
    }
  }

  const double rho = cfg.rho;
  const double kappa = cfg.lambda / (static_cast<double>(m) * rho);
  std::vector<CVector> v_seg(n), v_seg_prev(n);
  for (std::size_t j = 0; j < n; ++j) {
    v_seg[j] = zeros(spec.col_size(j));
    v_seg_prev[j] = zeros(spec.col_size(j));
  }
  SolveReport report;
  CVector v_full;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t id = i * n + j;
        workers[id].inbox_v = v_seg[j];
        report.ledger.record_recv(id, k, spec.col_size(j));
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t row_len = spec.row_size(i);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t id = i * n + j;
        report.ledger.record_broadcast(id, k, row_len, n - 1);
        for (std::size_t q = 0; q < n; ++q) {
          if (q == j) continue;
          workers[i * n + q].inbox_ghat[j] = workers[id].ghat;
          report.ledger.record_recv(i * n + q, k, row_len);
        }
      }
    }

    parallel_for(n_workers, opts.threads, [&](std::size_t id) {
      Worker& w = workers[id];
      const std::size_t row_len = w.g.size();
      if (k > 0) kernel::dual_update(w.s, w.u, w.inbox_v);
      CVector gij = w.g;
      const std::size_t j = id % n;
      for (std::size_t q = 0; q < n; ++q) {
        if (q == j) continue;
        const CVector& peer = w.inbox_ghat[q];
        for (std::size_t t = 0; t < row_len; ++t) gij[t] -= peer[t];
      }
      const CVector hg = adjoint_matvec(w.h, gij);
      const CVector rhs = kernel::gram_rhs(hg, w.inbox_v, w.s, rho);
      w.u = w.gram->solve(rhs);
      w.ok = all_finite(w.u);
      w.outbox_w = kernel::combine(w.u, w.s);
      w.ghat = matvec(w.h, w.u);
    });

    {
      std::vector<bool> ok(n_workers);
      for (std::size_t id = 0; id < n_workers; ++id) ok[id] = workers[id].ok;
      detail::check_workers_finite(ok, k, "hybrid_solve");
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        report.ledger.record_send(i * n + j, k, spec.col_size(j));
      }
    }

    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t len = spec.col_size(j);
      CVector mean_w = zeros(len);
      for (std::size_t i = 0; i < m; ++i) {
        const CVector& w = workers[i * n + j].outbox_w;
        for (std::size_t t = 0; t < len; ++t) mean_w[t] += w[t];
      }
      const double inv_count = static_cast<double>(m);
      for (std::size_t t = 0; t < len; ++t) mean_w[t] /= inv_count;
      v_seg_prev[j] = std::move(v_seg[j]);
      v_seg[j] = soft_threshold_vec(mean_w, kappa);
    }

    double rp2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) rp2 += sum_sq_diff(workers[i * n + j].u, v_seg[j]);
    }
    double dual_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) dual_sum += sum_sq_diff(v_seg[j], v_seg_prev[j]);
    const double rp = std::sqrt(rp2);
    const double rd = std::sqrt(rho * rho * static_cast<double>(m) * dual_sum);

    v_full.clear();
    v_full.reserve(n_pix);
    for (std::size_t j = 0; j < n; ++j) {
      v_full.insert(v_full.end(), v_seg[j].begin(), v_seg[j].end());
    }
    const double obj = objective_value(work->h, work->g, v_full, cfg.lambda);
    report.trace.push(rp, rd, obj);
    report.iterations_run = k + 1;

    if (opts.observer) {
      IterateSnapshot snap;
      snap.iteration = k + 1;
      snap.v = v_full;
      snap.v_prev.reserve(n_pix);
      for (std::size_t j = 0; j < n; ++j) {
        snap.v_prev.insert(snap.v_prev.end(), v_seg_prev[j].begin(), v_seg_prev[j].end());
      }
      for (std::size_t id = 0; id < n_workers; ++id) snap.replica_u.push_back(workers[id].u);
      snap.segment_v = v_seg;
      snap.segment_v_prev = v_seg_prev;
      opts.observer(snap);
    }
    if (stop_now(cfg, rp, rd)) break;
  }

  report.solution = std::move(v_full);
  detail::finalize_report(report, problem);
  return report;
}

}  // namespace admmsplit
