#pragma once

#include "blockcur/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace blockcur {

template <typename Scalar>
struct JacobiSvd {
  DenseMatrix<Scalar> matrixU;       // m x k, k = min(m, n)
  DenseVector<Scalar> singularValues;  // length k, non-increasing
  DenseMatrix<Scalar> matrixV;       // n x k
};

namespace detail {

/// One-sided Jacobi on the columns of a tall (m >= n) matrix: plane rotations
/// orthogonalize column pairs until every pair is numerically orthogonal;
/// singular values are the final column norms. Chosen as the oracle scheme
/// because it is short enough to audit and keeps high relative accuracy on
/// tiny ill-conditioned matrices. Columns whose norm falls below machine
/// precision times the Frobenius norm carry no information and are frozen,
/// otherwise noise-level columns would never pass the orthogonality test.
template <typename Scalar>
JacobiSvd<Scalar> one_sided_jacobi_tall(const DenseMatrix<Scalar>& A) {
  using ColMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index m = A.rows();
  const Index n = A.cols();

  ColMajor W = A;
  ColMajor V = ColMajor::Identity(n, n);

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar fro = W.norm();
  const Scalar tinySq = eps * fro * eps * fro;
  const Scalar convTol = Scalar(1e-14);
  constexpr int kMaxSweeps = 60;

  std::vector<Scalar> colNormSq(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    colNormSq[static_cast<std::size_t>(j)] = W.col(j).squaredNorm();
  }

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar app = colNormSq[static_cast<std::size_t>(p)];
        const Scalar aqq = colNormSq[static_cast<std::size_t>(q)];
        if (app <= tinySq || aqq <= tinySq) {
          continue;
        }
        const Scalar apq = W.col(p).dot(W.col(q));
        if (std::abs(apq) <= convTol * std::sqrt(app) * std::sqrt(aqq)) {
          continue;
        }
        const Scalar tau = (aqq - app) / (Scalar(2) * apq);
        const Scalar t = (tau >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;

        const DenseVector<Scalar> wp = W.col(p);
        W.col(p) = c * wp - s * W.col(q);
        W.col(q) = s * wp + c * W.col(q);
        const DenseVector<Scalar> vp = V.col(p);
        V.col(p) = c * vp - s * V.col(q);
        V.col(q) = s * vp + c * V.col(q);

        colNormSq[static_cast<std::size_t>(p)] = W.col(p).squaredNorm();
        colNormSq[static_cast<std::size_t>(q)] = W.col(q).squaredNorm();
        rotated = true;
      }
    }
    if (!rotated) {
      break;
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return colNormSq[static_cast<std::size_t>(a)] > colNormSq[static_cast<std::size_t>(b)];
  });

  JacobiSvd<Scalar> out;
  out.matrixU.resize(m, n);
  out.singularValues.resize(n);
  out.matrixV.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    const Scalar sigma = W.col(src).norm();
    out.singularValues(j) = sigma;
    out.matrixV.col(j) = V.col(src);
    if (sigma > Scalar(0)) {
      out.matrixU.col(j) = W.col(src) / sigma;
    } else {
      out.matrixU.col(j).setZero();
    }
  }
  return out;
}

}  // namespace detail

/// Full SVD of a dense matrix via one-sided Jacobi. min(m, n) must not exceed
/// the cap; the scheme is meant for desk-scale verification, not production
/// factorization.
template <typename Scalar>
JacobiSvd<Scalar> jacobi_svd(const DenseMatrix<Scalar>& A, Index cap = 1024) {
  if (std::min(A.rows(), A.cols()) > cap) {
    throw BudgetExceeded("jacobi_svd: min(rows, cols) = " +
                         std::to_string(std::min(A.rows(), A.cols())) + " exceeds cap " +
                         std::to_string(cap));
  }
  if (A.rows() >= A.cols()) {
    return detail::one_sided_jacobi_tall(A);
  }
  const DenseMatrix<Scalar> At = A.transpose();
  JacobiSvd<Scalar> t = detail::one_sided_jacobi_tall(At);
  JacobiSvd<Scalar> out;
  out.matrixU = std::move(t.matrixV);
  out.singularValues = std::move(t.singularValues);
  out.matrixV = std::move(t.matrixU);
  return out;
}

/// Singular spectrum only, non-increasing.
template <typename Scalar>
DenseVector<Scalar> singular_values(const DenseMatrix<Scalar>& A, Index cap = 1024) {
  return jacobi_svd(A, cap).singularValues;
}

}  // namespace blockcur
