#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scfs/types.hpp"

namespace scfs {

// Square integer contingency table: agreement(a, b) = #{i : truth_i = a,
// pred_i = b}, padded to max(k_truth, k_pred).
Eigen::MatrixXi agreement_matrix(const LabelVector& truth, const LabelVector& pred);

// Minimum-cost perfect matching on a square cost matrix (Hungarian method
// with potentials). Returns assignment[row] = column.
std::vector<int> hungarian_assignment(const MatrixXd& cost);

// Up to this many clusters, permutations are enumerated exhaustively.
inline constexpr int kEnumerationLimit = 8;

// (1/n) min over label permutations of the number of disagreements.
double misclustering_rate(const LabelVector& truth, const LabelVector& pred);
// Both evaluation paths, exposed for cross-checking.
double misclustering_rate_enumerated(const LabelVector& truth, const LabelVector& pred);
double misclustering_rate_hungarian(const LabelVector& truth, const LabelVector& pred);

struct GroupwiseRate {
  double value = 0.0;
  bool exact = true;  // false when k exceeds the enumeration limit
};

// Group-wise mislabeling rate: over matchings of estimated to true groups,
// the smallest worst-group max of the false-positive and false-negative
// fractions. Both labelings must have the same k non-empty groups.
GroupwiseRate groupwise_mislabel(const LabelVector& truth, const LabelVector& pred);

double adjusted_rand_index(const LabelVector& a, const LabelVector& b);

struct SelectionScore {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

SelectionScore selection_f1(const IndexSet& truth, const IndexSet& estimate);

// Size-weighted between-cluster variance of each column divided by its noise
// variance, i.e. (1 / (n sd_j^2)) Σ_a n_a (B_aj - weighted mean_j)^2.
VectorXd snr_contributions(const CenterMatrix& centers,
                           const std::vector<Eigen::Index>& cluster_sizes,
                           const VectorXd& noise_sds, const IndexSet& support);

// Minimum of snr_contributions over the support.
double empirical_snr(const CenterMatrix& centers,
                     const std::vector<Eigen::Index>& cluster_sizes,
                     const VectorXd& noise_sds, const IndexSet& support);

struct Separation {
  double delta_min = 0.0;
  double delta_max = 0.0;
  double lambda = 0.0;  // delta_max / delta_min
  bool coincident = false;  // two identical centers; lambda is +inf
};

Separation center_separation(const CenterMatrix& centers);

struct EvalReport {
  double misclustering = 0.0;
  std::optional<GroupwiseRate> groupwise_b;  // absent if a group is empty
  double ari = 0.0;
  std::optional<SelectionScore> selection;
};

EvalReport evaluate(const LabelVector& truth, const LabelVector& pred,
                    const IndexSet* true_support = nullptr,
                    const IndexSet* est_support = nullptr);

// CSV with a header line and one data row.
void write_eval_csv(std::ostream& out, const EvalReport& report);
// key = value lines.
void write_eval_text(std::ostream& out, const EvalReport& report);

}  // namespace scfs
