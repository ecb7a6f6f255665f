#pragma once

#include <Eigen/Dense>
#include <vector>

namespace scfs {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

// Cluster assignment of each sample, values in {0, ..., k-1}.
using LabelVector = std::vector<int>;

// Ascending list of feature (column) indices.
using IndexSet = std::vector<Eigen::Index>;

// k x d matrix of cluster centers, one row per cluster.
using CenterMatrix = MatrixXd;

// Number of distinct groups implied by a label vector (max label + 1).
int label_count(const LabelVector& labels);

// Per-group sizes; throws PartitionError on negative labels.
std::vector<Eigen::Index> group_sizes(const LabelVector& labels, int k);

}  // namespace scfs
