#pragma once

#include "blockcur/cur.hpp"
#include "blockcur/jacobi_svd.hpp"
#include "blockcur/norms.hpp"
#include "blockcur/types.hpp"

#include <Eigen/LU>

#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace blockcur {

/// Volume of a square matrix: |det|, via LU with partial pivoting.
template <typename Scalar>
Scalar volume(const DenseMatrix<Scalar>& M) {
  if (M.rows() != M.cols()) {
    throw InvalidArgument("volume: matrix must be square, got " + std::to_string(M.rows()) + " x " +
                          std::to_string(M.cols()));
  }
  return std::abs(Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(M)
                      .determinant());
}

template <typename Scalar>
struct MaxvolResult {
  IndexSet rowIndices{{}, Axis::Rows};
  IndexSet colIndices{{}, Axis::Cols};
  Scalar volume = Scalar(0);
  std::uint64_t candidatesExamined = 0;
};

namespace detail {

/// C(n, r) clamped to the uint64 range.
inline std::uint64_t binomial_clamped(Index n, Index r) {
  long double acc = 1.0L;
  for (Index k = 1; k <= r; ++k) {
    acc *= static_cast<long double>(n - r + k);
    acc /= static_cast<long double>(k);
    if (acc > 1.0e18L) {
      return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>(acc + 0.5L);
}

/// Advances a lexicographic r-combination of [0, n); false once exhausted.
inline bool next_combination(std::vector<Index>& combo, Index n) {
  const Index r = static_cast<Index>(combo.size());
  Index i = r - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - r + i) {
    --i;
  }
  if (i < 0) {
    return false;
  }
  ++combo[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < r; ++j) {
    combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

template <typename Scalar>
DenseMatrix<Scalar> gather_submatrix(const DenseMatrix<Scalar>& A, const std::vector<Index>& rows,
                                     const std::vector<Index>& cols) {
  DenseMatrix<Scalar> S(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index p = 0; p < S.rows(); ++p) {
    for (Index q = 0; q < S.cols(); ++q) {
      S(p, q) = A(rows[static_cast<std::size_t>(p)], cols[static_cast<std::size_t>(q)]);
    }
  }
  return S;
}

}  // namespace detail

/// Exhaustive search for the r x r submatrix of maximal volume. The problem
/// is NP-hard, so this is a desk-scale oracle: the number of candidate index
/// pairs C(m,r) * C(n,r) must stay within the budget or the call refuses
/// outright rather than truncating silently. Ties go to the lexicographically
/// smallest (I, J), which the ascending enumeration yields for free.
template <typename Scalar>
MaxvolResult<Scalar> brute_force_maxvol(const DenseMatrix<Scalar>& A, Index r,
                                        std::uint64_t budget = 10'000'000) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (r < 1 || r > std::min(m, n)) {
    throw InvalidArgument("brute_force_maxvol: rank must satisfy 1 <= r <= min(rows, cols)");
  }
  const std::uint64_t rowCombos = detail::binomial_clamped(m, r);
  const std::uint64_t colCombos = detail::binomial_clamped(n, r);
  if (rowCombos > budget || colCombos > budget ||
      static_cast<unsigned __int128>(rowCombos) * colCombos > budget) {
    throw BudgetExceeded("brute_force_maxvol: C(" + std::to_string(m) + "," + std::to_string(r) +
                         ") * C(" + std::to_string(n) + "," + std::to_string(r) +
                         ") candidate pairs exceed budget " + std::to_string(budget));
  }

  MaxvolResult<Scalar> best;
  best.volume = Scalar(-1);

  std::vector<Index> rowCombo(static_cast<std::size_t>(r));
  std::iota(rowCombo.begin(), rowCombo.end(), Index(0));
  do {
    std::vector<Index> colCombo(static_cast<std::size_t>(r));
    std::iota(colCombo.begin(), colCombo.end(), Index(0));
    do {
      const Scalar vol = volume(detail::gather_submatrix(A, rowCombo, colCombo));
      ++best.candidatesExamined;
      if (vol > best.volume) {
        best.volume = vol;
        best.rowIndices.indices = rowCombo;
        best.colIndices.indices = colCombo;
      }
    } while (detail::next_combination(colCombo, n));
  } while (detail::next_combination(rowCombo, m));
  return best;
}

/// Outcome of checking one error-bound instance. When the maximal volume is
/// numerically zero the bound's nonsingular-core hypothesis fails and the
/// instance is reported as skipped rather than failed.
template <typename Scalar>
struct TheoremCheck {
  bool holds = false;
  bool skipped = false;
  Scalar lhs = Scalar(0);
  Scalar rhs = Scalar(0);
};

namespace detail {

template <typename Scalar>
struct CrossBoundInstance {
  Scalar lhs = Scalar(0);
  DenseVector<Scalar> sigma;
  Scalar chebNorm = Scalar(0);
  bool skipped = false;
};

/// Shared setup for both bounds: exhaustive maxvol indices, Chebyshev norm of
/// the residual A - A(:,J) pinv(A(I,J)) A(I,:), and the singular spectrum.
template <typename Scalar>
CrossBoundInstance<Scalar> cross_bound_instance(const DenseMatrix<Scalar>& A, Index r,
                                                std::uint64_t budget) {
  CrossBoundInstance<Scalar> inst;
  inst.chebNorm = chebyshev_norm(A);
  const MaxvolResult<Scalar> mv = brute_force_maxvol(A, r, budget);
  Scalar volFloor = Scalar(1e-12);
  for (Index k = 0; k < r; ++k) {
    volFloor *= inst.chebNorm;
  }
  if (mv.volume < volFloor) {
    inst.skipped = true;
    return inst;
  }
  const CurFactors<Scalar> f = assemble(A, mv.rowIndices, mv.colIndices);
  inst.lhs = chebyshev_norm(A - evaluate(f));
  inst.sigma = singular_values(A);
  return inst;
}

template <typename Scalar>
Scalar sigma_after(const DenseVector<Scalar>& sigma, Index r) {
  return r < sigma.size() ? sigma(r) : Scalar(0);
}

}  // namespace detail

/// Checks ||A - A_r||_C <= (r+1) sigma_{r+1}(A) for the exhaustive maxvol
/// cross approximation A_r. The comparison allows 1e-9 relative slack plus an
/// absolute floor of 1e-12 ||A||_C, since the inequality is exact only in
/// real arithmetic.
template <typename Scalar>
TheoremCheck<Scalar> verify_theorem1(const DenseMatrix<Scalar>& A, Index r,
                                     std::uint64_t budget = 10'000'000) {
  const auto inst = detail::cross_bound_instance(A, r, budget);
  TheoremCheck<Scalar> check;
  if (inst.skipped) {
    check.skipped = true;
    check.holds = true;
    return check;
  }
  check.lhs = inst.lhs;
  check.rhs = static_cast<Scalar>(r + 1) * detail::sigma_after(inst.sigma, r);
  check.holds = check.lhs <= check.rhs * (Scalar(1) + Scalar(1e-9)) + Scalar(1e-12) * inst.chebNorm;
  return check;
}

/// Improved bound: the theorem-1 right-hand side divided by
/// sqrt(1 + sum_{k=1..r} sigma_{r+1}^2 / sigma_k^2). The denominator is at
/// least 1, so this right-hand side never exceeds theorem 1's.
template <typename Scalar>
TheoremCheck<Scalar> verify_theorem2(const DenseMatrix<Scalar>& A, Index r,
                                     std::uint64_t budget = 10'000'000) {
  const auto inst = detail::cross_bound_instance(A, r, budget);
  TheoremCheck<Scalar> check;
  if (inst.skipped) {
    check.skipped = true;
    check.holds = true;
    return check;
  }
  check.lhs = inst.lhs;
  const Scalar tail = detail::sigma_after(inst.sigma, r);
  if (tail == Scalar(0)) {
    check.rhs = Scalar(0);
  } else {
    Scalar sum = Scalar(0);
    for (Index k = 0; k < r; ++k) {
      const Scalar ratio = tail / inst.sigma(k);
      sum += ratio * ratio;
    }
    check.rhs = static_cast<Scalar>(r + 1) * tail / std::sqrt(Scalar(1) + sum);
  }
  check.holds = check.lhs <= check.rhs * (Scalar(1) + Scalar(1e-9)) + Scalar(1e-12) * inst.chebNorm;
  return check;
}

}  // namespace blockcur
