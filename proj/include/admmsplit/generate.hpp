#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/problem.hpp"
#include "admmsplit/rng.hpp"

namespace admmsplit {

/// Synthetic compressive-sensing instance.
///
/// H is drawn i.i.d.: complex-gaussian entries (x+iy)/sqrt(2 n_meas), or
/// unit-modulus random-phase entries e^{i theta}/sqrt(n_meas) — the latter is
/// a stand-in for coded-aperture style operators whose measurements carry low
/// mutual information. Columns are normalized to unit expected norm either
/// way, so solver parameters transfer across sizes. The ground truth has
/// sparsity_k unit-magnitude random-phase nonzeros at uniform positions, and
/// the noise is complex gaussian rescaled so the realized SNR matches snr_db
/// exactly (pass +infinity for a noiseless instance).
///
/// Draw order (part of the reproducibility contract): H entries row-major,
/// then support positions, then support values, then noise.
inline SensingProblem gen_problem(std::size_t n_meas, std::size_t n_pix,
                                  std::size_t sparsity_k, double snr_db, std::uint64_t seed,
                                  ProblemKind kind) {
  if (n_meas < 1 || n_pix < 1) throw ParameterError("gen_problem: dimensions must be positive");
  if (sparsity_k < 1 || sparsity_k > n_pix) {
    throw ParameterError("gen_problem: sparsity_k must be in [1, n_pix], got " +
                         std::to_string(sparsity_k));
  }
  if (std::isnan(snr_db)) throw ParameterError("gen_problem: snr_db is NaN");
  if (kind == ProblemKind::FromFile) {
    throw ParameterError("gen_problem: kind must be a synthetic family");
  }

  Xoshiro256pp rng(seed);
  SensingProblem problem;
  problem.kind = kind;
  problem.h = CMatrix(n_meas, n_pix);

  if (kind == ProblemKind::ComplexGaussian) {
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n_meas));
    for (std::size_t r = 0; r < n_meas; ++r) {
      for (std::size_t c = 0; c < n_pix; ++c) problem.h(r, c) = rng.next_complex_gauss() * scale;
    }
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_meas));
    for (std::size_t r = 0; r < n_meas; ++r) {
      for (std::size_t c = 0; c < n_pix; ++c) problem.h(r, c) = rng.next_unit_phase() * scale;
    }
  }

  // Partial Fisher-Yates: the first sparsity_k slots end up holding the
  // support, drawn without replacement.
  std::vector<std::size_t> positions(n_pix);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t t = 0; t < sparsity_k; ++t) {
    const std::size_t j = t + static_cast<std::size_t>(rng.next_below(n_pix - t));
    std::swap(positions[t], positions[j]);
  }
  CVector truth = zeros(n_pix);
  for (std::size_t t = 0; t < sparsity_k; ++t) truth[positions[t]] = rng.next_unit_phase();

  const CVector clean = matvec(problem.h, truth);
  problem.g = clean;
  problem.noise_sigma = 0.0;
  if (std::isfinite(snr_db)) {
    CVector w(n_meas);
    for (auto& z : w) z = rng.next_complex_gauss();
    const double w_norm = norm2(w);
    const double signal_norm = norm2(clean);
    const double alpha =
        w_norm > 0.0 ? signal_norm / (w_norm * std::pow(10.0, snr_db / 20.0)) : 0.0;
    for (std::size_t i = 0; i < n_meas; ++i) problem.g[i] = clean[i] + alpha * w[i];
    problem.noise_sigma = alpha;
  }
  problem.truth = std::move(truth);
  problem.validate();
  return problem;
}

}  // namespace admmsplit
