#pragma once

#include <vector>

#include "scfs/random.hpp"
#include "scfs/types.hpp"

namespace scfs {

struct KMeansParams {
  int restarts = 10;
  int max_iter = 100;
};

struct KMeansResult {
  LabelVector labels;
  CenterMatrix centers;  // k x d, centers(a) = mean of rows labelled a
  double objective = 0.0;  // within-cluster sum of squares
  int iterations = 0;
  int restart_index = 0;
  // Objective after every center update of the winning restart.
  std::vector<double> objective_trace;
  // Best objective of every restart, in restart order.
  std::vector<double> restart_objectives;
};

// Row indices chosen by k-means++ seeding: the first uniformly, each next one
// with probability proportional to its squared distance to the nearest row
// already chosen. If all remaining distances are zero, falls back to a
// uniform draw over rows not yet chosen.
std::vector<Eigen::Index> seed_plus_plus_indices(const MatrixXd& points,
                                                 Eigen::Index k, Rng& rng);

CenterMatrix seed_plus_plus(const MatrixXd& points, Eigen::Index k, Rng& rng);

// Σ_i ||x_i - centers(labels_i)||^2.
double kmeans_objective(const MatrixXd& points, const LabelVector& labels,
                        const CenterMatrix& centers);

// Nearest center under squared Euclidean distance, lowest index on ties.
LabelVector assign_nearest(const MatrixXd& points, const CenterMatrix& centers);

// Cluster means for the given labels. An empty cluster is repaired by moving
// into it the point farthest from its own center (among clusters with more
// than one member), which updates `labels` in place.
CenterMatrix update_centers(const MatrixXd& points, LabelVector& labels,
                            Eigen::Index k);

// Lloyd descent from an initial labelling: alternate center update and
// reassignment until labels stop changing or `max_iter` rounds have run.
KMeansResult lloyd_from_labels(const MatrixXd& points, LabelVector labels,
                               Eigen::Index k, int max_iter);

// Best of `restarts` Lloyd descents. Restart 0 starts from `init_centers`
// when it has rows; every other restart is seeded by k-means++ from the
// derived stream rng.split(r). Ties in objective go to the lowest restart.
KMeansResult lloyd_run(const MatrixXd& points, const CenterMatrix& init_centers,
                       int max_iter, int restarts, const Rng& rng);

// lloyd_run with every restart seeded by k-means++.
KMeansResult kmeans(const MatrixXd& points, Eigen::Index k,
                    const KMeansParams& params, const Rng& rng);

}  // namespace scfs
