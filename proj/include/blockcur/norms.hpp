#pragma once

#include <Eigen/Core>

namespace blockcur {

/// sqrt of the sum of squared entries.
template <typename Derived>
typename Derived::RealScalar frobenius_norm(const Eigen::MatrixBase<Derived>& A) {
  return A.norm();
}

/// Largest absolute entry, written ||.||_C.
template <typename Derived>
typename Derived::RealScalar chebyshev_norm(const Eigen::MatrixBase<Derived>& A) {
  if (A.size() == 0) {
    return typename Derived::RealScalar(0);
  }
  return A.cwiseAbs().maxCoeff();
}

}  // namespace blockcur
