#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library code they are used to check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// Mean and sample sd with explicit loops (two passes).
inline std::pair<double, double> mean_sd(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

// Within-cluster SS of an assignment with centers at the cluster means;
// +inf if some cluster in [0, k) is empty.
inline double assignment_cost(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                              int k) {
  const auto d = x.cols();
  std::vector<std::vector<double>> sum(k, std::vector<double>(d, 0.0));
  std::vector<int> count(k, 0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    ++count[labels[i]];
    for (Eigen::Index c = 0; c < d; ++c) sum[labels[i]][c] += x(i, c);
  }
  for (int a = 0; a < k; ++a)
    if (count[a] == 0) return std::numeric_limits<double>::infinity();
  double cost = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index c = 0; c < d; ++c) {
      const double r = x(i, c) - sum[labels[i]][c] / count[labels[i]];
      cost += r * r;
    }
  return cost;
}

struct BestAssignment {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> labels;
};

// Enumerate all k^n label vectors.
inline BestAssignment exhaustive_kmeans(const Eigen::MatrixXd& x, int k) {
  const auto n = static_cast<int>(x.rows());
  std::vector<int> labels(n, 0);
  BestAssignment best;
  for (;;) {
    const double c = assignment_cost(x, labels, k);
    if (c < best.cost) {
      best.cost = c;
      best.labels = labels;
    }
    int pos = 0;
    while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

// min over permutations of the number of disagreements, straight from the
// definition (relabel pred, count mismatches).
inline double misclustering(const std::vector<int>& truth, const std::vector<int>& pred,
                            int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  long best = std::numeric_limits<long>::max();
  do {
    long miss = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) miss += truth[i] != perm[pred[i]];
    best = std::min(best, miss);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

// Group-wise mislabeling rate from explicit index sets.
inline double groupwise(const std::vector<int>& truth, const std::vector<int>& pred,
                        int k) {
  std::vector<std::set<int>> t(k), g(k);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    t[truth[i]].insert(static_cast<int>(i));
    g[pred[i]].insert(static_cast<int>(i));
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int a = 0; a < k; ++a) {
      const auto& ga = g[perm[a]];
      int g_not_t = 0, t_not_g = 0;
      for (int i : ga) g_not_t += !t[a].count(i);
      for (int i : t[a]) t_not_g += !ga.count(i);
      worst = std::max(worst, static_cast<double>(g_not_t) / static_cast<double>(ga.size()));
      worst = std::max(worst, static_cast<double>(t_not_g) / static_cast<double>(t[a].size()));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Rank-r reconstruction residual ||Y - Y_r||_F^2 from a two-sided Jacobi SVD.
inline double rank_r_residual(const Eigen::MatrixXd& y, Eigen::Index r) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(y);
  const auto& s = svd.singularValues();
  double res = 0.0;
  for (Eigen::Index i = r; i < s.size(); ++i) res += s(i) * s(i);
  return res;
}

}  // namespace oracle
