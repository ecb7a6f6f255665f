#pragma once

#include <Eigen/Dense>
#include <Eigen/Jacobi>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scfs/error.hpp"
#include "scfs/types.hpp"

namespace scfs {

// Dense n x p observation matrix (rows = samples, columns = features).
// Values are stored column-major, so per-feature passes are contiguous.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(MatrixXd values);

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  const MatrixXd& values() const { return values_; }

  // Statistics of the columns before standardization. Empty until
  // standardize() has produced this matrix.
  const VectorXd& column_means() const { return column_means_; }
  const VectorXd& column_stds() const { return column_stds_; }
  const std::vector<bool>& degenerate() const { return degenerate_; }
  bool standardized() const { return standardized_; }

  // Copy of the listed columns, keeping the standardization state.
  DataMatrix select_columns(const IndexSet& columns) const;

 private:
  friend DataMatrix standardize(const DataMatrix& m);

  MatrixXd values_;
  VectorXd column_means_;
  VectorXd column_stds_;
  std::vector<bool> degenerate_;
  bool standardized_ = false;
};

// Column threshold below which a standard deviation counts as zero.
inline constexpr double kDegenerateStd = 1e-12;

// Center each column and scale it to unit sample standard deviation
// (denominator n-1). Constant columns become identically zero and are
// flagged degenerate. Requires n >= 2.
DataMatrix standardize(const DataMatrix& m);

// Σ (a_i - mean)^2 computed with two passes.
template <typename Derived>
typename Derived::Scalar centered_sum_of_squares(
    const Eigen::DenseBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Scalar(0);
  const Scalar mean = a.mean();
  return (a.derived().array() - mean).square().sum();
}

// Σ a_i^2 - m * mean^2, the one-pass form of the same quantity.
template <typename Derived>
typename Derived::Scalar shortcut_sum_of_squares(
    const Eigen::DenseBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.size() == 0) return Scalar(0);
  const Scalar mean = a.mean();
  return a.derived().array().square().sum() -
         static_cast<Scalar>(a.size()) * mean * mean;
}

template <typename Scalar>
struct SymmetricEigen {
  Vector<Scalar> values;   // nonincreasing
  Matrix<Scalar> vectors;  // column i pairs with values(i)
  int sweeps = 0;
};

// Cyclic Jacobi eigensolver for a symmetric matrix. Iterates full sweeps
// over the strict upper triangle until the off-diagonal Frobenius norm falls
// below `rel_tol` times the Frobenius norm of the input. Throws
// NumericalError after `max_sweeps` sweeps.
template <typename Scalar>
SymmetricEigen<Scalar> jacobi_eigen(Matrix<Scalar> a,
                                    Scalar rel_tol = Scalar(1e-12),
                                    int max_sweeps = 100) {
  if (a.rows() != a.cols())
    throw DimensionError("jacobi_eigen: matrix is not square");
  const Eigen::Index n = a.rows();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  auto off_norm = [&a, n]() {
    Scalar s(0);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i) s += a(i, j) * a(i, j);
    return std::sqrt(Scalar(2) * s);
  };

  const Scalar target = rel_tol * a.norm();
  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == max_sweeps)
      throw NumericalError("jacobi_eigen: no convergence after " +
                           std::to_string(max_sweeps) + " sweeps");
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) {
                     return a(i, i) > a(j, j);
                   });

  SymmetricEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.values(c) = a(order[c], order[c]);
    out.vectors.col(c) = v.col(order[c]);
  }
  out.sweeps = sweep;
  return out;
}

// Flip each column so its entry of largest magnitude is nonnegative
// (first such entry on ties).
template <typename Derived>
void canonicalize_signs(Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index arg = 0;
    Scalar best(-1);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Scalar mag = std::abs(m(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (m(arg, c) < Scalar(0)) m.col(c) *= Scalar(-1);
  }
}

// Top-k left singular vectors of a data matrix.
struct EigenBasis {
  MatrixXd u;                // n x k, orthonormal columns
  VectorXd singular_values;  // length k, nonincreasing
  int numerical_rank = 0;    // singular values >= 1e-10 * sigma_1
  bool rank_deficient = false;
};

// Relative cutoff under which singular values are treated as zero.
inline constexpr double kRankTolerance = 1e-10;

// Leading k left singular vectors, via a Jacobi eigendecomposition of the
// smaller of the two Gram matrices. Requires 1 <= k <= min(n, p).
EigenBasis top_k_left_singular(const MatrixXd& y, Eigen::Index k);

inline EigenBasis top_k_left_singular(const DataMatrix& m, Eigen::Index k) {
  return top_k_left_singular(m.values(), k);
}

}  // namespace scfs
