#pragma once

#include "blockcur/blockwise.hpp"
#include "blockcur/jacobi_svd.hpp"
#include "blockcur/norms.hpp"
#include "blockcur/types.hpp"

#include <future>
#include <type_traits>
#include <unordered_set>

namespace blockcur {

/// CUR factors of A: actual columns C = A(:,J), actual rows R = A(I,:), and
/// the raw intersection submatrix A(I,J). The core is stored uninverted;
/// pseudoinversion is deferred to evaluation so the factors stay exact.
template <typename Scalar>
struct CurFactors {
  DenseMatrix<Scalar> C;     // m x |J|
  DenseMatrix<Scalar> core;  // |I| x |J|
  DenseMatrix<Scalar> R;     // |I| x n
  IndexSet rowIndices{{}, Axis::Rows};
  IndexSet colIndices{{}, Axis::Cols};
};

namespace detail {

inline void check_index_set(const IndexSet& s, Index dimSize, const char* what) {
  if (s.empty()) {
    throw InvalidArgument(std::string("assemble: ") + what + " index set is empty");
  }
  std::unordered_set<Index> seen;
  for (Index idx : s.indices) {
    if (idx < 0 || idx >= dimSize) {
      throw InvalidArgument(std::string("assemble: ") + what + " index " + std::to_string(idx) +
                            " out of range [0, " + std::to_string(dimSize) + ")");
    }
    if (!seen.insert(idx).second) {
      throw InvalidArgument(std::string("assemble: duplicate ") + what + " index " +
                            std::to_string(idx));
    }
  }
}

}  // namespace detail

/// Gathers C, core, R from A at the given row/column index sets. A is not
/// modified; indices must be distinct and in range.
template <typename Scalar>
CurFactors<Scalar> assemble(const DenseMatrix<Scalar>& A, const IndexSet& rowIndices,
                            const IndexSet& colIndices) {
  detail::check_index_set(rowIndices, A.rows(), "row");
  detail::check_index_set(colIndices, A.cols(), "column");

  CurFactors<Scalar> f;
  f.rowIndices = rowIndices;
  f.colIndices = colIndices;
  const Index nr = rowIndices.size();
  const Index nc = colIndices.size();
  f.C.resize(A.rows(), nc);
  f.R.resize(nr, A.cols());
  f.core.resize(nr, nc);
  for (Index q = 0; q < nc; ++q) {
    f.C.col(q) = A.col(colIndices[q]);
  }
  for (Index p = 0; p < nr; ++p) {
    f.R.row(p) = A.row(rowIndices[p]);
  }
  for (Index p = 0; p < nr; ++p) {
    for (Index q = 0; q < nc; ++q) {
      f.core(p, q) = A(rowIndices[p], colIndices[q]);
    }
  }
  return f;
}

/// Moore-Penrose pseudoinverse via the Jacobi SVD oracle. Singular values at
/// or below tol times the largest are treated as zero. Rank-deficient input
/// is handled by that truncation, never an error.
template <typename Scalar>
DenseMatrix<Scalar> pseudoinverse(const DenseMatrix<Scalar>& M,
                                  std::type_identity_t<Scalar> tol = Scalar(1e-12)) {
  const JacobiSvd<Scalar> svd = jacobi_svd(M);
  const Scalar cutoff = tol * (svd.singularValues.size() > 0 ? svd.singularValues(0) : Scalar(0));
  DenseMatrix<Scalar> pinv = DenseMatrix<Scalar>::Zero(M.cols(), M.rows());
  for (Index k = 0; k < svd.singularValues.size(); ++k) {
    const Scalar sigma = svd.singularValues(k);
    if (sigma <= cutoff || sigma == Scalar(0)) {
      break;
    }
    pinv.noalias() += (svd.matrixV.col(k) / sigma) * svd.matrixU.col(k).transpose();
  }
  return pinv;
}

/// Reconstructs C * pinv(core) * R. The pseudoinverse is applied in factored
/// form, (C * V_k / sigma_k) * (U_k^T * R): the columns of C*V shrink with
/// the corresponding singular values, so the division stays benign where a
/// materialized pinv(core) would put enormous entries against each other and
/// cancel. Same truncation rule as pseudoinverse().
template <typename Scalar>
DenseMatrix<Scalar> evaluate(const CurFactors<Scalar>& f,
                             std::type_identity_t<Scalar> tol = Scalar(1e-12)) {
  const JacobiSvd<Scalar> svd = jacobi_svd(f.core);
  const Scalar cutoff = tol * (svd.singularValues.size() > 0 ? svd.singularValues(0) : Scalar(0));
  Index kept = 0;
  while (kept < svd.singularValues.size() && svd.singularValues(kept) > cutoff &&
         svd.singularValues(kept) > Scalar(0)) {
    ++kept;
  }
  if (kept == 0) {
    return DenseMatrix<Scalar>::Zero(f.C.rows(), f.R.cols());
  }
  DenseMatrix<Scalar> left = f.C * svd.matrixV.leftCols(kept);  // m x kept
  for (Index k = 0; k < kept; ++k) {
    left.col(k) /= svd.singularValues(k);
  }
  const DenseMatrix<Scalar> right = svd.matrixU.leftCols(kept).transpose() * f.R;  // kept x n
  return left * right;
}

/// ||A - C U R||_F / ||A||_F, materialized directly.
template <typename Scalar>
Scalar relative_error(const DenseMatrix<Scalar>& A, const CurFactors<Scalar>& f,
                      std::type_identity_t<Scalar> tol = Scalar(1e-12)) {
  const Scalar denom = frobenius_norm(A);
  if (denom == Scalar(0)) {
    throw InvalidArgument("relative_error: matrix has zero Frobenius norm");
  }
  return frobenius_norm(A - evaluate(f, tol)) / denom;
}

/// Full pipeline: blockwise selection of r row and c column indices (the two
/// selections run concurrently when threads >= 2, each on its own working
/// copy), truncation of both sets to the shorter length if early termination
/// made them uneven, then factor assembly. Deterministic for any blockCount
/// and thread count.
template <typename Scalar>
CurFactors<Scalar> decompose(const DenseMatrix<Scalar>& A, Index r, Index c, Index blockCount,
                             std::type_identity_t<Scalar> tol = Scalar(1e-12), int threads = 1) {
  if (r < 1 || r > A.rows()) {
    throw InvalidArgument("decompose: row rank must satisfy 1 <= r <= rows");
  }
  if (c < 1 || c > A.cols()) {
    throw InvalidArgument("decompose: column rank must satisfy 1 <= c <= cols");
  }
  if (blockCount < 1 || blockCount > std::min(A.rows(), A.cols())) {
    throw InvalidArgument("decompose: block count must satisfy 1 <= b <= min(rows, cols)");
  }

  BlockwiseResult<Scalar> rowSel, colSel;
  if (threads >= 2) {
    const int rowThreads = (threads + 1) / 2;
    const int colThreads = threads / 2;
    auto rowFuture = std::async(std::launch::async, [&] {
      return blockwise_select(A, r, blockCount, Axis::Rows, tol, rowThreads);
    });
    colSel = blockwise_select(A, c, blockCount, Axis::Cols, tol, colThreads);
    rowSel = rowFuture.get();
  } else {
    rowSel = blockwise_select(A, r, blockCount, Axis::Rows, tol, 1);
    colSel = blockwise_select(A, c, blockCount, Axis::Cols, tol, 1);
  }

  if (rowSel.indices.empty() || colSel.indices.empty()) {
    throw InvalidArgument("decompose: selection found no usable indices (zero matrix?)");
  }
  // Early termination can leave the two sets uneven; keep the strongest,
  // earliest pivots of each so the core stays square.
  const Index common = std::min(rowSel.indices.size(), colSel.indices.size());
  rowSel.indices.indices.resize(static_cast<std::size_t>(common));
  colSel.indices.indices.resize(static_cast<std::size_t>(common));
  return assemble(A, rowSel.indices, colSel.indices);
}

}  // namespace blockcur
