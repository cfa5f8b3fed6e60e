#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"
#include "admmsplit/problem.hpp"

namespace admmsplit {

/// Division of an N_m x N_p system into M row blocks and N column blocks.
///
/// Bounds are half-open: row block i covers rows [row_bounds[i], row_bounds[i+1]).
/// Uniform (non-ragged) partitions require exact divisibility; ragged ones give
/// the leading blocks one extra row/column each.
struct PartitionSpec {
  std::size_t M = 1;
  std::size_t N = 1;
  std::vector<std::size_t> row_bounds;  // M+1 ascending, [0 .. N_m]
  std::vector<std::size_t> col_bounds;  // N+1 ascending, [0 .. N_p]
  bool ragged = false;

  std::size_t n_meas() const { return row_bounds.back(); }
  std::size_t n_pix() const { return col_bounds.back(); }
  std::size_t row_size(std::size_t i) const { return row_bounds[i + 1] - row_bounds[i]; }
  std::size_t col_size(std::size_t j) const { return col_bounds[j + 1] - col_bounds[j]; }
};

namespace detail {

inline std::vector<std::size_t> split_bounds(std::size_t total, std::size_t parts,
                                             bool ragged, const char* axis) {
  if (parts < 1 || parts > total) {
    throw PartitionError(std::string("make_partition: ") + axis + " division count " +
                         std::to_string(parts) + " not in [1, " + std::to_string(total) + "]");
  }
  if (!ragged && total % parts != 0) {
    throw PartitionError(std::string("make_partition: ") + std::to_string(parts) +
                         " does not divide " + std::to_string(total) + " " + axis +
                         "s (pass ragged=true to allow uneven blocks)");
  }
  const std::size_t base = total / parts;
  const std::size_t rem = total % parts;
  std::vector<std::size_t> bounds(parts + 1, 0);
  for (std::size_t b = 0; b < parts; ++b) {
    bounds[b + 1] = bounds[b] + base + (b < rem ? 1 : 0);
  }
  return bounds;
}

}  // namespace detail

inline PartitionSpec make_partition(std::size_t n_meas, std::size_t n_pix, std::size_t m,
                                    std::size_t n, bool ragged = false) {
  PartitionSpec spec;
  spec.M = m;
  spec.N = n;
  spec.ragged = ragged;
  spec.row_bounds = detail::split_bounds(n_meas, m, ragged, "row");
  spec.col_bounds = detail::split_bounds(n_pix, n, ragged, "column");
  return spec;
}

namespace detail {

inline void check_partition_fits(const SensingProblem& problem, const PartitionSpec& spec) {
  if (spec.n_meas() != problem.h.rows() || spec.n_pix() != problem.h.cols()) {
    throw DimensionError("partition bounds do not match problem dimensions");
  }
}

}  // namespace detail

/// H_i and g_i for row block i. Blocks are materialized copies: each simulated
/// node owns exactly its slice and nothing else.
inline std::pair<CMatrix, CVector> row_block(const SensingProblem& problem,
                                             const PartitionSpec& spec, std::size_t i) {
  detail::check_partition_fits(problem, spec);
  if (i >= spec.M) throw IndexError("row_block: index " + std::to_string(i) + " out of range");
  const std::size_t lo = spec.row_bounds[i];
  const std::size_t hi = spec.row_bounds[i + 1];
  CMatrix hi_block(hi - lo, problem.h.cols());
  for (std::size_t r = lo; r < hi; ++r) {
    for (std::size_t c = 0; c < problem.h.cols(); ++c) hi_block(r - lo, c) = problem.h(r, c);
  }
  CVector gi(problem.g.begin() + static_cast<std::ptrdiff_t>(lo),
             problem.g.begin() + static_cast<std::ptrdiff_t>(hi));
  return {std::move(hi_block), std::move(gi)};
}

/// H_j for column block j.
inline CMatrix col_block(const SensingProblem& problem, const PartitionSpec& spec,
                         std::size_t j) {
  detail::check_partition_fits(problem, spec);
  if (j >= spec.N) throw IndexError("col_block: index " + std::to_string(j) + " out of range");
  const std::size_t lo = spec.col_bounds[j];
  const std::size_t hi = spec.col_bounds[j + 1];
  CMatrix hj(problem.h.rows(), hi - lo);
  for (std::size_t r = 0; r < problem.h.rows(); ++r) {
    for (std::size_t c = lo; c < hi; ++c) hj(r, c - lo) = problem.h(r, c);
  }
  return hj;
}

/// H_ij for grid block (i, j).
inline CMatrix grid_block(const SensingProblem& problem, const PartitionSpec& spec,
                          std::size_t i, std::size_t j) {
  detail::check_partition_fits(problem, spec);
  if (i >= spec.M || j >= spec.N) {
    throw IndexError("grid_block: index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range");
  }
  const std::size_t rlo = spec.row_bounds[i];
  const std::size_t rhi = spec.row_bounds[i + 1];
  const std::size_t clo = spec.col_bounds[j];
  const std::size_t chi = spec.col_bounds[j + 1];
  CMatrix hij(rhi - rlo, chi - clo);
  for (std::size_t r = rlo; r < rhi; ++r) {
    for (std::size_t c = clo; c < chi; ++c) hij(r - rlo, c - clo) = problem.h(r, c);
  }
  return hij;
}

/// Segment [col_bounds[j], col_bounds[j+1]) of a pixel-length vector.
inline CVector col_segment(const CVector& v, const PartitionSpec& spec, std::size_t j) {
  if (j >= spec.N) throw IndexError("col_segment: index out of range");
  if (v.size() != spec.n_pix()) throw DimensionError("col_segment: vector length mismatch");
  return CVector(v.begin() + static_cast<std::ptrdiff_t>(spec.col_bounds[j]),
                 v.begin() + static_cast<std::ptrdiff_t>(spec.col_bounds[j + 1]));
}

}  // namespace admmsplit
