#pragma once

#include <cmath>
#include <cstddef>

#include "admmsplit/linalg.hpp"

namespace admmsplit {

/// Element-wise soft thresholding, the proximal operator of kappa * |.|.
///
/// For |a| > kappa the magnitude shrinks by kappa with the phase preserved,
/// a * (1 - kappa/|a|); anything at or below kappa maps to zero. For real a
/// this is exactly a - kappa * sign(a). Requires kappa >= 0.
inline Complex soft_threshold(Complex a, double kappa) {
  const double mag = std::abs(a);
  if (mag > kappa) return a * (1.0 - kappa / mag);
  return Complex(0.0, 0.0);
}

inline CVector soft_threshold_vec(const CVector& a, double kappa) {
  CVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = soft_threshold(a[i], kappa);
  return out;
}

}  // namespace admmsplit
