#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace blockcur {

using Index = Eigen::Index;

/// Dense real matrix, row-major. The one storage layout used throughout;
/// column access is strided.
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RowMatrixXd = DenseMatrix<double>;

enum class Axis { Rows = 0, Cols = 1 };

inline const char* axis_name(Axis a) { return a == Axis::Rows ? "rows" : "cols"; }

/// Bad dimensions, ranks, block counts, indices: anything a caller got wrong.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search or SVD was asked to exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File load/store failure; the message carries position information.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered list of distinct selected indices along one axis.
/// Selection order is preserved.
struct IndexSet {
  std::vector<Index> indices;
  Axis axis = Axis::Rows;

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
  Index operator[](Index i) const { return indices[static_cast<std::size_t>(i)]; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.axis == b.axis && a.indices == b.indices;
  }
};

/// Contiguous split of one axis into ordered, disjoint blocks covering
/// [0, dimSize).
struct BlockPartition {
  struct Block {
    Index start = 0;
    Index length = 0;
  };

  Axis axis = Axis::Rows;
  std::vector<Block> blocks;

  Index block_count() const { return static_cast<Index>(blocks.size()); }
};

/// Per-iteration diagnostics of a selection run. pivotMagnitudes holds
/// |R_k(i,j)| for the sequential algorithm and the winning residual norm for
/// the blockwise one; an early stop happens before a sub-threshold pivot is
/// recorded, so the list length always equals iterationsRun.
template <typename Scalar>
struct SelectionTrace {
  std::vector<Scalar> pivotMagnitudes;
  bool terminatedEarly = false;
  Index iterationsRun = 0;
};

}  // namespace blockcur
