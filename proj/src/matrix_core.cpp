#include "scfs/matrix_core.hpp"

#include <string>

namespace scfs {

int label_count(const LabelVector& labels) {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return k;
}

std::vector<Eigen::Index> group_sizes(const LabelVector& labels, int k) {
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) {
    if (l < 0 || l >= k)
      throw PartitionError("label " + std::to_string(l) + " outside [0, " +
                           std::to_string(k) + ")");
    ++sizes[static_cast<std::size_t>(l)];
  }
  return sizes;
}

DataMatrix::DataMatrix(MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw DimensionError("DataMatrix: need at least one row and one column");
  if (!values_.allFinite())
    throw DomainError("DataMatrix: non-finite entry");
}

DataMatrix DataMatrix::select_columns(const IndexSet& columns) const {
  DataMatrix out;
  out.values_.resize(rows(), static_cast<Eigen::Index>(columns.size()));
  const bool stats = column_means_.size() == cols();
  if (stats) {
    out.column_means_.resize(out.values_.cols());
    out.column_stds_.resize(out.values_.cols());
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Eigen::Index j = columns[c];
    if (j < 0 || j >= cols())
      throw DimensionError("select_columns: index " + std::to_string(j) +
                           " out of range");
    const auto cc = static_cast<Eigen::Index>(c);
    out.values_.col(cc) = values_.col(j);
    if (stats) {
      out.column_means_(cc) = column_means_(j);
      out.column_stds_(cc) = column_stds_(j);
    }
    if (!degenerate_.empty())
      out.degenerate_.push_back(degenerate_[static_cast<std::size_t>(j)]);
  }
  out.standardized_ = standardized_;
  return out;
}

DataMatrix standardize(const DataMatrix& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index p = m.cols();
  if (n < 2) throw DimensionError("standardize: need at least two rows");

  DataMatrix out;
  out.values_.resize(n, p);
  out.column_means_.resize(p);
  out.column_stds_.resize(p);
  out.degenerate_.assign(static_cast<std::size_t>(p), false);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto col = m.values().col(j);
    const double mean = col.mean();
    const double sd =
        std::sqrt(centered_sum_of_squares(col) / static_cast<double>(n - 1));
    out.column_means_(j) = mean;
    out.column_stds_(j) = sd;
    if (sd < kDegenerateStd) {
      out.values_.col(j).setZero();
      out.degenerate_[static_cast<std::size_t>(j)] = true;
    } else {
      out.values_.col(j) = (col.array() - mean) / sd;
    }
  }
  out.standardized_ = true;
  return out;
}

namespace {

// Fill columns [from, k) of u with unit vectors orthogonal to all earlier
// columns, drawing candidates from the standard basis in order.
void complete_basis(MatrixXd& u, Eigen::Index from) {
  const Eigen::Index n = u.rows();
  Eigen::Index next = 0;
  for (Eigen::Index c = from; c < u.cols(); ++c) {
    for (;; ++next) {
      if (next >= n)
        throw NumericalError("top_k_left_singular: basis completion failed");
      VectorXd cand = VectorXd::Unit(n, next);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index prev = 0; prev < c; ++prev)
          cand -= u.col(prev).dot(cand) * u.col(prev);
      const double norm = cand.norm();
      if (norm > 1e-6) {
        u.col(c) = cand / norm;
        ++next;
        break;
      }
    }
  }
}

}  // namespace

EigenBasis top_k_left_singular(const MatrixXd& y, Eigen::Index k) {
  const Eigen::Index n = y.rows();
  const Eigen::Index p = y.cols();
  if (k < 1 || k > std::min(n, p))
    throw DimensionError("top_k_left_singular: k=" + std::to_string(k) +
                         " outside [1, min(n, p)=" +
                         std::to_string(std::min(n, p)) + "]");

  const bool wide = n <= p;
  const Eigen::Index dim = wide ? n : p;
  MatrixXd gram = MatrixXd::Zero(dim, dim);
  if (wide)
    gram.selfadjointView<Eigen::Lower>().rankUpdate(y);
  else
    gram.selfadjointView<Eigen::Lower>().rankUpdate(y.transpose());
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

  const auto eig = jacobi_eigen<double>(std::move(gram));

  EigenBasis out;
  out.singular_values.resize(k);
  const double top = std::sqrt(std::max(eig.values(0), 0.0));
  int rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double sv = std::sqrt(std::max(eig.values(i), 0.0));
    const bool zero = !(top > 0.0) || sv < kRankTolerance * top;
    out.singular_values(i) = zero ? 0.0 : sv;
    if (!zero) ++rank;
  }
  out.numerical_rank = rank;
  out.rank_deficient = rank < k;

  if (wide) {
    out.u = eig.vectors.leftCols(k);
  } else {
    out.u.resize(n, k);
    for (Eigen::Index i = 0; i < rank; ++i)
      out.u.col(i) = y * eig.vectors.col(i) / out.singular_values(i);
    complete_basis(out.u, rank);
  }
  canonicalize_signs(out.u);
  return out;
}

}  // namespace scfs
