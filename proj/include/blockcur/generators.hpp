#pragma once

#include "blockcur/types.hpp"

#include <cstdint>

namespace blockcur {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1), reproducible across platforms.
inline double splitmix64_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Hilbert matrix H(i,j) = 1/(i+j+1), 0-based. Symmetric to the bit.
template <typename Scalar = double>
DenseMatrix<Scalar> gen_hilbert(Index n) {
  if (n < 1) {
    throw InvalidArgument("gen_hilbert: dimension must be >= 1");
  }
  DenseMatrix<Scalar> H(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      H(i, j) = Scalar(1) / static_cast<Scalar>(i + j + 1);
    }
  }
  return H;
}

/// Synthetic low-rank test matrix H = A * B with A(i,j) = B(i,j) = 1/(i+j),
/// 1-based, A of size n x r and B of size r x n. B equals A^T entrywise, so H
/// is symmetric PSD with rank <= r; the product is accumulated in fixed k
/// order and mirrored so the result is bit-symmetric.
template <typename Scalar = double>
DenseMatrix<Scalar> gen_synthetic_lowrank(Index n, Index r) {
  if (r < 1 || r > n) {
    throw InvalidArgument("gen_synthetic_lowrank: rank must satisfy 1 <= r <= n, got r=" +
                          std::to_string(r) + " for n=" + std::to_string(n));
  }
  DenseMatrix<Scalar> factor(n, r);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < r; ++j) {
      factor(i, j) = Scalar(1) / static_cast<Scalar>(i + j + 2);
    }
  }
  DenseMatrix<Scalar> H(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) {
      Scalar sum = 0;
      for (Index k = 0; k < r; ++k) {
        sum += factor(i, k) * factor(j, k);
      }
      H(i, j) = sum;
      H(j, i) = sum;
    }
  }
  return H;
}

/// Seeded uniform random matrix with entries in [lo, hi). Uses a fixed
/// generator so the same seed yields the same matrix on every platform.
template <typename Scalar = double>
DenseMatrix<Scalar> gen_uniform(Index rows, Index cols, std::uint64_t seed, Scalar lo = Scalar(-1),
                                Scalar hi = Scalar(1)) {
  if (rows < 1 || cols < 1) {
    throw InvalidArgument("gen_uniform: dimensions must be >= 1");
  }
  if (!(lo < hi)) {
    throw InvalidArgument("gen_uniform: need lo < hi");
  }
  std::uint64_t state = seed;
  DenseMatrix<Scalar> A(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      A(i, j) = lo + static_cast<Scalar>(detail::splitmix64_unit(state)) * (hi - lo);
    }
  }
  return A;
}

}  // namespace blockcur
