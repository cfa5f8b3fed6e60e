#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "admmsplit/admm_core.hpp"
#include "admmsplit/comm.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/metrics.hpp"

namespace admmsplit {

/// Outcome of one solve.
struct SolveReport {
  CVector solution;  // length n_pix
  ResidualTrace trace;
  CommLedger ledger;
  std::size_t iterations_run = 0;
  double objective = 0.0;  // final 0.5||Hv - g||^2 + lambda ||v||_1
  std::optional<RecoveryMetrics> metrics;
};

/// Read-only view of one iteration's state, handed to an observer after the
/// v-update. Used by instrumentation and consistency tests; not part of the
/// simulated communication (nothing here is counted in the ledger).
struct IterateSnapshot {
  std::size_t iteration = 0;  // 1-based
  CVector v;                  // assembled solution variable
  CVector v_prev;
  std::vector<CVector> replica_u;        // one entry per worker node, ascending id
  std::vector<CVector> segment_v;        // one entry per column segment
  std::vector<CVector> segment_v_prev;
};

using IterateObserver = std::function<void(const IterateSnapshot&)>;

/// Execution knobs that do not affect the computed values. Any thread count
/// yields bit-identical results; cross-worker reductions always run on the
/// coordinator in ascending index order.
struct SolveOptions {
  std::size_t threads = 1;
  bool ragged = false;
  IterateObserver observer;
};

}  // namespace admmsplit
