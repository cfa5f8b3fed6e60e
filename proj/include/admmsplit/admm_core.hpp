#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

/// Shared solver parameters.
///
/// eps_pri / eps_dual are absolute thresholds on the residual norms; 0
/// disables the corresponding check. Early stop requires every enabled
/// threshold to hold (with both disabled the solver always runs max_iters).
struct SolverConfig {
  double rho = 1.0;
  double lambda = 1.0;
  double scl = 1.0;
  std::size_t max_iters = 50;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(rho > 0.0)) throw ParameterError("SolverConfig: rho must be positive");
    if (!(lambda > 0.0)) throw ParameterError("SolverConfig: lambda must be positive");
    if (!(scl > 0.0)) throw ParameterError("SolverConfig: scl must be positive");
    if (max_iters < 1) throw ParameterError("SolverConfig: max_iters must be >= 1");
    if (eps_pri < 0.0 || eps_dual < 0.0) {
      throw ParameterError("SolverConfig: residual thresholds must be non-negative");
    }
  }
};

/// Per-iteration residual norms plus the objective value at that iterate.
struct ResidualTrace {
  std::vector<double> primal;
  std::vector<double> dual;
  std::vector<double> objective;

  std::size_t size() const { return primal.size(); }

  void push(double rp, double rd, double obj) {
    primal.push_back(rp);
    dual.push_back(rd);
    objective.push_back(obj);
  }
};

inline bool stop_now(const SolverConfig& cfg, double rp, double rd) {
  if (cfg.eps_pri == 0.0 && cfg.eps_dual == 0.0) return false;
  const bool pri_ok = cfg.eps_pri == 0.0 || rp <= cfg.eps_pri;
  const bool dual_ok = cfg.eps_dual == 0.0 || rd <= cfg.eps_dual;
  return pri_ok && dual_ok;
}

/// 0.5 ||H v - g||^2 + lambda ||v||_1.
inline double objective_value(const CMatrix& h, const CVector& g, const CVector& v,
                              double lambda) {
  const CVector hv = matvec(h, v);
  return 0.5 * sum_sq_diff(hv, g) + lambda * norm1(v);
}

namespace kernel {

// The update expressions below are shared verbatim by the reference solver
// and all three distributed solvers so that degenerate splits reproduce the
// reference iterates bit for bit.

/// rhs[t] = Hg[t] + rho * (v[t] - s[t])
inline CVector gram_rhs(const CVector& hg, const CVector& v, const CVector& s, double rho) {
  CVector rhs(hg.size());
  for (std::size_t t = 0; t < rhs.size(); ++t) rhs[t] = hg[t] + rho * (v[t] - s[t]);
  return rhs;
}

/// w[t] = u[t] + s[t]
inline CVector combine(const CVector& u, const CVector& s) {
  CVector w(u.size());
  for (std::size_t t = 0; t < w.size(); ++t) w[t] = u[t] + s[t];
  return w;
}

/// s[t] = (s[t] + u[t]) - v[t]
inline void dual_update(CVector& s, const CVector& u, const CVector& v) {
  for (std::size_t t = 0; t < s.size(); ++t) s[t] = (s[t] + u[t]) - v[t];
}

}  // namespace kernel

}  // namespace admmsplit
