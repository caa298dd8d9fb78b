#pragma once

#include "blockcur/partition.hpp"
#include "blockcur/types.hpp"
#include "blockcur/worker_pool.hpp"

#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

namespace blockcur {

template <typename Scalar>
struct BlockwiseResult {
  IndexSet indices;
  SelectionTrace<Scalar> trace;
};

/// Called once per iteration with the extracted maximum-norm residual vector,
/// before any block is deflated by it. Test hook for the orthogonality
/// property of the selected vector sequence.
template <typename Scalar>
using SharedVectorObserver = std::function<void(Index iteration, const DenseVector<Scalar>&)>;

/// Blockwise greedy selection of r indices along one axis. Works on a private
/// copy of A; each iteration scans the residual candidate norms blockwise in
/// parallel, reduces block results in block order (ties go to the smallest
/// global index, so the outcome is independent of block count and thread
/// count), extracts the winning residual vector, and deflates every block by
/// the orthogonal projection onto that vector:
///
///   a <- a - (<a, v> / <v, v>) v
///
/// The selected residual is zero after its own deflation and is pinned to
/// exact zero, so no index is ever selected twice. Early termination once the
/// winning norm falls to tol times the iteration-0 winning norm; a zero
/// residual always terminates. Results are bit-identical for any valid
/// blockCount and any threads value.
template <typename Scalar>
BlockwiseResult<Scalar> blockwise_select(const DenseMatrix<Scalar>& A, Index r, Index blockCount,
                                         Axis axis, std::type_identity_t<Scalar> tol = Scalar(1e-12),
                                         int threads = 1,
                                         const SharedVectorObserver<Scalar>* observer = nullptr) {
  const Index dimSize = axis == Axis::Rows ? A.rows() : A.cols();
  const Index vecLen = axis == Axis::Rows ? A.cols() : A.rows();
  if (r < 1 || r > dimSize) {
    throw InvalidArgument("blockwise_select: rank must satisfy 1 <= r <= dimSize, got r=" +
                          std::to_string(r) + " for dimSize=" + std::to_string(dimSize));
  }
  if (!(tol >= Scalar(0))) {
    throw InvalidArgument("blockwise_select: tolerance must be >= 0");
  }
  const BlockPartition part = partition(dimSize, blockCount, axis);
  const Index b = part.block_count();

  WorkerPool pool(threads);

  // Private working copy with candidates as contiguous rows; the cols case
  // works on the transpose so both axes share one kernel.
  DenseMatrix<Scalar> W(dimSize, vecLen);
  pool.run(b, [&](Index k) {
    const auto& blk = part.blocks[static_cast<std::size_t>(k)];
    if (axis == Axis::Rows) {
      W.middleRows(blk.start, blk.length) = A.middleRows(blk.start, blk.length);
    } else {
      W.middleRows(blk.start, blk.length) = A.middleCols(blk.start, blk.length).transpose();
    }
  });

  std::vector<Scalar> blockBestNormSq(static_cast<std::size_t>(b));
  std::vector<Index> blockBestIdx(static_cast<std::size_t>(b));
  DenseVector<Scalar> shared(vecLen);

  BlockwiseResult<Scalar> result;
  result.indices.axis = axis;
  Scalar initialMaxNorm = Scalar(0);

  for (Index iter = 0; iter < r; ++iter) {
    // Blockwise scan for the candidate of maximal norm.
    pool.run(b, [&](Index k) {
      const auto& blk = part.blocks[static_cast<std::size_t>(k)];
      Scalar best = Scalar(-1);
      Index bestIdx = blk.start;
      for (Index i = blk.start; i < blk.start + blk.length; ++i) {
        const Scalar normSq = W.row(i).squaredNorm();
        if (normSq > best) {
          best = normSq;
          bestIdx = i;
        }
      }
      blockBestNormSq[static_cast<std::size_t>(k)] = best;
      blockBestIdx[static_cast<std::size_t>(k)] = bestIdx;
    });

    // Reduce in block order; blocks are ordered by global index, so a strict
    // comparison implements the smallest-index tie break.
    Scalar bestNormSq = Scalar(-1);
    Index maxIdx = 0;
    for (Index k = 0; k < b; ++k) {
      if (blockBestNormSq[static_cast<std::size_t>(k)] > bestNormSq) {
        bestNormSq = blockBestNormSq[static_cast<std::size_t>(k)];
        maxIdx = blockBestIdx[static_cast<std::size_t>(k)];
      }
    }
    const Scalar maxNorm = std::sqrt(bestNormSq);
    if (iter == 0) {
      initialMaxNorm = maxNorm;
    }
    if (maxNorm <= tol * initialMaxNorm) {
      result.trace.terminatedEarly = true;
      break;
    }

    shared = W.row(maxIdx);
    const Scalar sharedNormSq = shared.squaredNorm();
    if (observer) {
      (*observer)(iter, shared);
    }

    // Blockwise deflation by the shared vector.
    pool.run(b, [&](Index k) {
      const auto& blk = part.blocks[static_cast<std::size_t>(k)];
      for (Index i = blk.start; i < blk.start + blk.length; ++i) {
        const Scalar coef = W.row(i).dot(shared) / sharedNormSq;
        W.row(i) -= coef * shared.transpose();
      }
    });
    W.row(maxIdx).setZero();

    result.indices.indices.push_back(maxIdx);
    result.trace.pivotMagnitudes.push_back(maxNorm);
  }
  result.trace.iterationsRun = static_cast<Index>(result.trace.pivotMagnitudes.size());
  return result;
}

}  // namespace blockcur
