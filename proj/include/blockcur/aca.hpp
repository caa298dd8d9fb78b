#pragma once

#include "blockcur/norms.hpp"
#include "blockcur/types.hpp"

#include <cmath>
#include <type_traits>

namespace blockcur {

template <typename Scalar>
struct AcaResult {
  IndexSet rowIndices{{}, Axis::Rows};
  IndexSet colIndices{{}, Axis::Cols};
  SelectionTrace<Scalar> trace;
};

/// Sequential adaptive cross approximation pivoting. Each iteration takes the
/// entry of largest absolute value in the residual (ties broken by smallest
/// row-major linear index), records its row and column, and subtracts the
/// corresponding rank-1 cross. Stops after r pivots, or earlier once the
/// pivot magnitude falls to tol times the initial Chebyshev norm. A zero
/// pivot always stops the loop, so tol = 0 runs the full fixed count on any
/// nonzero input. Single-threaded by contract: this is the baseline the
/// blockwise kernel is measured against.
template <typename Scalar>
AcaResult<Scalar> aca_sequential(const DenseMatrix<Scalar>& A, Index r,
                                 std::type_identity_t<Scalar> tol = Scalar(1e-12)) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (r < 1 || r > std::min(m, n)) {
    throw InvalidArgument("aca_sequential: rank must satisfy 1 <= r <= min(rows, cols), got r=" +
                          std::to_string(r));
  }
  if (!(tol >= Scalar(0))) {
    throw InvalidArgument("aca_sequential: tolerance must be >= 0");
  }

  DenseMatrix<Scalar> R = A;
  const Scalar initialNorm = chebyshev_norm(A);
  const Scalar threshold = tol * initialNorm;

  AcaResult<Scalar> result;
  for (Index k = 0; k < r; ++k) {
    Scalar best = Scalar(-1);
    Index bi = 0, bj = 0;
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Scalar v = std::abs(R(i, j));
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best <= threshold) {
      result.trace.terminatedEarly = true;
      break;
    }
    const Scalar pivot = R(bi, bj);
    const DenseVector<Scalar> col = R.col(bj);
    const DenseVector<Scalar> scaledRow = R.row(bi).transpose() / pivot;
    for (Index i = 0; i < m; ++i) {
      R.row(i) -= col(i) * scaledRow.transpose();
    }
    result.rowIndices.indices.push_back(bi);
    result.colIndices.indices.push_back(bj);
    result.trace.pivotMagnitudes.push_back(best);
  }
  result.trace.iterationsRun = static_cast<Index>(result.trace.pivotMagnitudes.size());
  return result;
}

}  // namespace blockcur
