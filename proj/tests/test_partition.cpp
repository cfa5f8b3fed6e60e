#include <catch2/catch_amalgamated.hpp>

#include "admmsplit/partition.hpp"
#include "support/test_util.hpp"

using namespace admmsplit;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

SensingProblem make_problem(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SensingProblem p;
  p.h = random_matrix(rows, cols, seed);
  p.g = random_vector(rows, seed + 1);
  return p;
}

}  // namespace

TEST_CASE("make_partition uniform bounds") {
  const PartitionSpec spec = make_partition(2160, 22500, 4, 3);
  REQUIRE(spec.row_bounds.size() == 5);
  REQUIRE(spec.col_bounds.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(spec.row_size(i) == 540);
  for (std::size_t j = 0; j < 3; ++j) CHECK(spec.col_size(j) == 7500);
}

TEST_CASE("make_partition single block") {
  const PartitionSpec spec = make_partition(7, 9, 1, 1);
  CHECK(spec.row_size(0) == 7);
  CHECK(spec.col_size(0) == 9);
}

TEST_CASE("make_partition ragged remainder rule") {
  const PartitionSpec spec = make_partition(10, 6, 4, 1, true);
  CHECK(spec.row_size(0) == 3);
  CHECK(spec.row_size(1) == 3);
  CHECK(spec.row_size(2) == 2);
  CHECK(spec.row_size(3) == 2);
}

TEST_CASE("make_partition rejects non-divisible uniform splits") {
  CHECK_THROWS_AS(make_partition(10, 6, 4, 1, false), PartitionError);
  CHECK_THROWS_AS(make_partition(10, 6, 1, 4, false), PartitionError);
  CHECK_THROWS_AS(make_partition(10, 6, 0, 1), PartitionError);
  CHECK_THROWS_AS(make_partition(10, 6, 11, 1), PartitionError);
}

TEST_CASE("row_block at M=1 returns the problem verbatim") {
  const SensingProblem p = make_problem(4, 6, 21);
  const PartitionSpec spec = make_partition(4, 6, 1, 1);
  const auto [h, g] = row_block(p, spec, 0);
  CHECK(h == p.h);
  CHECK(g == p.g);
}

TEST_CASE("grid blocks tile the matrix exactly") {
  const SensingProblem p = make_problem(4, 4, 22);
  const PartitionSpec spec = make_partition(4, 4, 2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const CMatrix block = grid_block(p, spec, i, j);
      REQUIRE(block.rows() == 2);
      REQUIRE(block.cols() == 2);
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
          CHECK(block(r, c) == p.h(spec.row_bounds[i] + r, spec.col_bounds[j] + c));
        }
      }
    }
  }
}

TEST_CASE("row and column blocks reassemble H and g") {
  const SensingProblem p = make_problem(6, 8, 23);
  const PartitionSpec spec = make_partition(6, 8, 3, 4);

  for (std::size_t i = 0; i < spec.M; ++i) {
    const auto [hi, gi] = row_block(p, spec, i);
    for (std::size_t r = 0; r < hi.rows(); ++r) {
      CHECK(gi[r] == p.g[spec.row_bounds[i] + r]);
      for (std::size_t c = 0; c < hi.cols(); ++c) {
        CHECK(hi(r, c) == p.h(spec.row_bounds[i] + r, c));
      }
    }
  }
  for (std::size_t j = 0; j < spec.N; ++j) {
    const CMatrix hj = col_block(p, spec, j);
    for (std::size_t r = 0; r < hj.rows(); ++r) {
      for (std::size_t c = 0; c < hj.cols(); ++c) {
        CHECK(hj(r, c) == p.h(r, spec.col_bounds[j] + c));
      }
    }
  }
}

TEST_CASE("stack/section duality: H u equals the sum of column-block products") {
  const SensingProblem p = make_problem(6, 8, 24);
  const PartitionSpec spec = make_partition(6, 8, 1, 4);
  const CVector u = random_vector(8, 25);

  const CVector direct = matvec(p.h, u);
  CVector summed = zeros(6);
  for (std::size_t j = 0; j < spec.N; ++j) {
    const CVector uj = col_segment(u, spec, j);
    const CVector part = matvec(col_block(p, spec, j), uj);
    for (std::size_t r = 0; r < 6; ++r) summed[r] += part[r];
  }
  CHECK(max_abs_diff(direct, summed) <= 1e-12 * std::max(1.0, norm_inf(direct)));
}

TEST_CASE("block extraction rejects out-of-range indices") {
  const SensingProblem p = make_problem(4, 6, 26);
  const PartitionSpec spec = make_partition(4, 6, 2, 3);
  CHECK_THROWS_AS(row_block(p, spec, 2), IndexError);
  CHECK_THROWS_AS(col_block(p, spec, 3), IndexError);
  CHECK_THROWS_AS(grid_block(p, spec, 2, 0), IndexError);
  CHECK_THROWS_AS(grid_block(p, spec, 0, 3), IndexError);
  CHECK_THROWS_AS(col_segment(random_vector(6, 1), spec, 3), IndexError);
}

TEST_CASE("benchmark grid block shapes") {
  // Shape check only; bounds are enough, no need to materialize the matrix.
  const PartitionSpec spec = make_partition(2160, 22500, 4, 3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(spec.row_size(i) == 540);
      CHECK(spec.col_size(j) == 7500);
    }
  }
}
