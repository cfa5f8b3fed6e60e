#include <catch2/catch_amalgamated.hpp>

#include "admmsplit/generate.hpp"
#include "admmsplit/reference.hpp"
#include "support/ista.hpp"
#include "support/test_util.hpp"

using namespace admmsplit;

TEST_CASE("reference solver on the identity operator is the l1 prox") {
  SensingProblem p;
  p.h = CMatrix::identity(2);
  p.g = {Complex(3, 0), Complex(0, 0)};

  SolverConfig cfg;
  cfg.rho = 1.0;
  cfg.lambda = 1.0;
  cfg.max_iters = 100;
  const SolveReport report = lasso_admm_reference(p, cfg);

  CHECK(std::abs(report.solution[0] - Complex(2, 0)) <= 1e-6);
  CHECK(std::abs(report.solution[1]) <= 1e-6);
  CHECK(report.iterations_run == 100);
  CHECK(report.trace.size() == 100);
  CHECK(report.ledger.empty());
}

TEST_CASE("zero data gives the zero solution immediately") {
  SensingProblem p;
  p.h = testutil::random_matrix(5, 8, 61);
  p.g = zeros(5);

  SolverConfig cfg;
  cfg.rho = 2.0;
  cfg.lambda = 0.5;
  cfg.max_iters = 3;
  const SolveReport report = lasso_admm_reference(p, cfg);
  CHECK(report.solution == zeros(8));
  CHECK(report.trace.primal[0] == 0.0);
}

TEST_CASE("residual thresholds stop the solver early; both must hold") {
  const SensingProblem p = gen_problem(12, 30, 3, std::numeric_limits<double>::infinity(), 77,
                                       ProblemKind::ComplexGaussian);
  SolverConfig cfg;
  cfg.rho = 1.0;
  cfg.lambda = 1e-2;
  cfg.max_iters = 500;

  cfg.eps_pri = 1e-9;
  cfg.eps_dual = 1e-9;
  const SolveReport tight = lasso_admm_reference(p, cfg);
  CHECK(tight.iterations_run < 500);
  CHECK(tight.trace.size() == tight.iterations_run);
  CHECK(tight.trace.primal.back() <= 1e-9);
  CHECK(tight.trace.dual.back() <= 1e-9);

  cfg.eps_pri = 1e-9;
  cfg.eps_dual = 0.0;  // disabled: only the primal threshold gates
  const SolveReport pri_only = lasso_admm_reference(p, cfg);
  CHECK(pri_only.trace.primal.back() <= 1e-9);

  cfg.eps_pri = 0.0;
  cfg.eps_dual = 0.0;  // both disabled: full iteration budget
  const SolveReport full = lasso_admm_reference(p, cfg);
  CHECK(full.iterations_run == 500);
}

TEST_CASE("reference solver matches the ISTA oracle") {
  const SensingProblem p =
      gen_problem(20, 60, 5, std::numeric_limits<double>::infinity(), 303,
                  ProblemKind::ComplexGaussian);
  const double lambda = 1e-3 * norm_inf(adjoint_matvec(p.h, p.g));

  SolverConfig cfg;
  cfg.rho = 1.0;
  cfg.lambda = lambda;
  cfg.max_iters = 3000;
  const SolveReport admm = lasso_admm_reference(p, cfg);

  const testutil::IstaResult ista = testutil::ista_lasso(p.h, p.g, lambda);
  CHECK(testutil::rel_error(admm.solution, ista.solution) <= 1e-4);

  // objective no worse than the oracle's, up to 1e-6 relative
  const double admm_obj = testutil::lasso_objective(p.h, p.g, admm.solution, lambda);
  CHECK(admm_obj <= ista.objective * (1.0 + 1e-6) + 1e-12);

  REQUIRE(admm.metrics.has_value());
  CHECK(admm.metrics->nmse <= 1e-2);
}

TEST_CASE("joint scaling tames large operator magnitudes") {
  // Physically scaled operator: entries ~1e4. With scl = 1e-4 the solve works
  // at unit scale and the l1 weight is meaningful; unscaled, the same lambda
  // is negligible against the quadratic and sparsity is lost.
  const SensingProblem base =
      gen_problem(20, 60, 4, std::numeric_limits<double>::infinity(), 505,
                  ProblemKind::RandomPhase);
  const SensingProblem big = apply_scaling(base, 1e4);

  SolverConfig cfg;
  cfg.rho = 1e5;
  cfg.lambda = 1e-2;
  cfg.max_iters = 50;

  cfg.scl = 1e-4;
  const SolveReport scaled = lasso_admm_reference(big, cfg);
  REQUIRE(scaled.metrics.has_value());

  cfg.scl = 1.0;
  const SolveReport unscaled = lasso_admm_reference(big, cfg);
  REQUIRE(unscaled.metrics.has_value());

  CHECK(scaled.metrics->nmse < 1e-2);
  CHECK(scaled.metrics->nmse < unscaled.metrics->nmse);
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.rho = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = SolverConfig{};
  cfg.lambda = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = SolverConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = SolverConfig{};
  cfg.eps_pri = -1e-3;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("dimension mismatch is rejected") {
  SensingProblem p;
  p.h = testutil::random_matrix(4, 6, 91);
  p.g = testutil::random_vector(5, 92);
  SolverConfig cfg;
  CHECK_THROWS_AS(lasso_admm_reference(p, cfg), DimensionError);
}
