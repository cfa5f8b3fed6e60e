#pragma once

#include <cstddef>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

struct RecoveryMetrics {
  double nmse = 0.0;
  double support_precision = 0.0;
  double support_recall = 0.0;
};

/// NMSE = ||estimate - truth||^2 / ||truth||^2, plus support precision/recall
/// with the estimate's support taken at magnitude > 1e-3 * ||estimate||_inf
/// and the truth's support as its exact nonzeros. An empty estimated support
/// counts as precision 1 (no false positives).
inline RecoveryMetrics recovery_metrics(const CVector& estimate, const CVector& truth) {
  if (estimate.size() != truth.size()) {
    throw DimensionError("recovery_metrics: length mismatch");
  }
  const double truth_sq = sum_sq(truth);
  if (truth_sq == 0.0) throw MetricsError("recovery_metrics: truth is identically zero");

  RecoveryMetrics m;
  m.nmse = sum_sq_diff(estimate, truth) / truth_sq;

  const double threshold = 1e-3 * norm_inf(estimate);
  std::size_t est_support = 0, truth_support = 0, hits = 0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const bool in_est = std::abs(estimate[i]) > threshold;
    const bool in_truth = truth[i] != Complex(0.0, 0.0);
    est_support += in_est;
    truth_support += in_truth;
    hits += in_est && in_truth;
  }
  m.support_precision =
      est_support == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(est_support);
  m.support_recall = static_cast<double>(hits) / static_cast<double>(truth_support);
  return m;
}

}  // namespace admmsplit
