#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "admmsplit/errors.hpp"
#include "admmsplit/linalg.hpp"

namespace admmsplit {

enum class ProblemKind { ComplexGaussian, RandomPhase, FromFile };

inline const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ComplexGaussian: return "complex-gaussian";
    case ProblemKind::RandomPhase: return "random-phase";
    case ProblemKind::FromFile: return "from-file";
  }
  return "unknown";
}

/// A linear inverse instance g = H u + w with optional ground truth.
struct SensingProblem {
  CMatrix h;
  CVector g;
  std::optional<CVector> truth;
  double noise_sigma = 0.0;  // per-entry complex std of the injected noise
  ProblemKind kind = ProblemKind::FromFile;

  std::size_t n_meas() const { return h.rows(); }
  std::size_t n_pix() const { return h.cols(); }

  void validate() const {
    if (h.empty()) throw DimensionError("SensingProblem: empty sensing matrix");
    if (g.size() != h.rows()) {
      throw DimensionError("SensingProblem: g length " + std::to_string(g.size()) +
                           " != H rows " + std::to_string(h.rows()));
    }
    if (truth && truth->size() != h.cols()) {
      throw DimensionError("SensingProblem: truth length " + std::to_string(truth->size()) +
                           " != H cols " + std::to_string(h.cols()));
    }
    if (!all_finite(h) || !all_finite(g) || (truth && !all_finite(*truth))) {
      throw NumericalError("SensingProblem: non-finite entries");
    }
    if (noise_sigma < 0.0) throw ParameterError("SensingProblem: negative noise_sigma");
  }
};

/// Jointly scales H <- scl*H and g <- scl*g.
///
/// The noiseless solution set of H u = g is unchanged. In the lasso objective
/// 0.5||Hu - g||^2 + lambda||u||_1 this is equivalent to keeping the original
/// problem and using lambda_eff = lambda / scl^2, so lambda must be chosen for
/// the scaled magnitudes. Used to tame the dynamic range of physically scaled
/// operators before solving.
inline SensingProblem apply_scaling(const SensingProblem& problem, double scl) {
  if (!(scl > 0.0)) throw ParameterError("apply_scaling: scl must be positive");
  SensingProblem out = problem;
  Complex* p = out.h.data();
  for (std::size_t i = 0; i < out.h.size(); ++i) p[i] *= scl;
  for (auto& z : out.g) z *= scl;
  return out;
}

}  // namespace admmsplit
