#include "scfs/feature_select.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "scfs/csv.hpp"
#include "scfs/error.hpp"

namespace scfs {

FeatureScores score_features(const MatrixXd& y, const LabelVector& labels) {
  const Eigen::Index n = y.rows();
  const Eigen::Index p = y.cols();
  if (n < 2) throw DimensionError("score_features: need at least two rows");
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw DimensionError("score_features: label length does not match rows");
  const int k = label_count(labels);
  const auto sizes = group_sizes(labels, k);
  for (int a = 0; a < k; ++a)
    if (sizes[static_cast<std::size_t>(a)] == 0)
      throw PartitionError("score_features: group " + std::to_string(a) +
                           " is empty");

  FeatureScores out;
  out.residual_ss.resize(p);
  out.total_ss.resize(p);
  out.score.resize(p);
  VectorXd group_mean(k);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto col = y.col(j);
    group_mean.setZero();
    for (Eigen::Index i = 0; i < n; ++i) group_mean(labels[static_cast<std::size_t>(i)]) += col(i);
    for (int a = 0; a < k; ++a)
      group_mean(a) /= static_cast<double>(sizes[static_cast<std::size_t>(a)]);
    double c = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = col(i) - group_mean(labels[static_cast<std::size_t>(i)]);
      c += r * r;
    }
    const double m = centered_sum_of_squares(col);
    out.residual_ss(j) = c;
    out.total_ss(j) = m;
    out.score(j) = m > 0.0 ? std::min(c / m, 1.0) : 1.0;
  }
  return out;
}

IndexSet select_threshold(const FeatureScores& scores, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw DomainError("select_threshold: tau must lie in (0, 1)");
  IndexSet out;
  for (Eigen::Index j = 0; j < scores.size(); ++j)
    if (scores.score(j) <= tau) out.push_back(j);
  if (out.empty())
    throw SelectionEmptyError("no feature scored at or below tau=" +
                              csv::format_double(tau));
  return out;
}

IndexSet select_top_m(const FeatureScores& scores, Eigen::Index m) {
  const Eigen::Index p = scores.size();
  if (m < 1 || m > p)
    throw DimensionError("select_top_m: m=" + std::to_string(m) +
                         " outside [1, p=" + std::to_string(p) + "]");
  IndexSet order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return scores.score(a) < scores.score(b);
  });
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  return order;
}

double population_r_squared(double theta, double sigma, double a11, double a12,
                            double a21, double a22) {
  const double tol = 1e-12;
  if (a11 < 0 || a12 < 0 || a21 < 0 || a22 < 0)
    throw DomainError("population_r_squared: negative probability");
  if (std::abs(a11 + a12 + a21 + a22 - 1.0) > tol)
    throw DomainError("population_r_squared: probabilities must sum to 1");
  if (!(a11 + a21 > 0) || !(a22 + a12 > 0))
    throw DomainError("population_r_squared: an estimated label has mass 0");
  if (!(sigma > 0)) throw DomainError("population_r_squared: sigma must be > 0");
  const double t2 = theta * theta;
  const double bracket = (a11 - a21) * (a11 - a21) / (a11 + a21) +
                         (a22 - a12) * (a22 - a12) / (a22 + a12);
  return t2 / (t2 + sigma * sigma) * bracket;
}

void write_scores_csv(std::ostream& out, const FeatureScores& scores) {
  out << "feature_index,c,m,sc,selected\n";
  std::size_t next = 0;
  for (Eigen::Index j = 0; j < scores.size(); ++j) {
    bool sel = false;
    if (next < scores.selected.size() && scores.selected[next] == j) {
      sel = true;
      ++next;
    }
    out << j << ',' << csv::format_double(scores.residual_ss(j)) << ','
        << csv::format_double(scores.total_ss(j)) << ','
        << csv::format_double(scores.score(j)) << ',' << (sel ? 1 : 0) << '\n';
  }
}

void write_scores_csv(const std::string& path, const FeatureScores& scores) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_scores_csv(out, scores);
}

}  // namespace scfs
