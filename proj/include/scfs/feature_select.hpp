#pragma once

#include <iosfwd>
#include <string>

#include "scfs/matrix_core.hpp"

namespace scfs {

// Per-feature fit of a one-way layout on the given labels.
struct FeatureScores {
  VectorXd residual_ss;  // c_j: within-group sum of squares
  VectorXd total_ss;     // m_j: sum of squares about the column mean
  VectorXd score;        // sc_j = c_j / m_j, 1 for constant columns
  IndexSet selected;
  double tau = 0.9;

  Eigen::Index size() const { return score.size(); }
};

// Within-group and total sums of squares for every column, and their ratio.
// Every group in {0, ..., max label} must be non-empty.
FeatureScores score_features(const MatrixXd& y, const LabelVector& labels);

inline FeatureScores score_features(const DataMatrix& m,
                                    const LabelVector& labels) {
  return score_features(m.values(), labels);
}

// { j : score_j <= tau }, ascending. Throws SelectionEmptyError when empty.
IndexSet select_threshold(const FeatureScores& scores, double tau);

// The m features with the smallest scores (lower index first on ties),
// returned in ascending index order.
IndexSet select_top_m(const FeatureScores& scores, Eigen::Index m);

// Population R^2 of a feature against estimated labels in the symmetric
// two-cluster model with means +/- theta and noise sd sigma. a_kl is the
// joint probability of true label k and estimated label l.
double population_r_squared(double theta, double sigma, double a11, double a12,
                            double a21, double a22);

// CSV with columns feature_index,c,m,sc,selected.
void write_scores_csv(std::ostream& out, const FeatureScores& scores);
void write_scores_csv(const std::string& path, const FeatureScores& scores);

}  // namespace scfs
