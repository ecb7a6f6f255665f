#include "scfs/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "scfs/csv.hpp"
#include "scfs/error.hpp"

namespace scfs {
namespace {

void check_lengths(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size())
    throw DimensionError("label vectors differ in length (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  if (a.empty()) throw DimensionError("label vectors are empty");
}

// Permutation (pred label -> truth label) maximising total agreement.
std::vector<int> best_matching(const Eigen::MatrixXi& agree) {
  MatrixXd cost = -agree.cast<double>().transpose();
  return hungarian_assignment(cost);
}

long matched(const Eigen::MatrixXi& agree, const std::vector<int>& perm) {
  long total = 0;
  for (std::size_t b = 0; b < perm.size(); ++b)
    total += agree(perm[b], static_cast<Eigen::Index>(b));
  return total;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

Eigen::MatrixXi agreement_matrix(const LabelVector& truth, const LabelVector& pred) {
  check_lengths(truth, pred);
  const int k = std::max(label_count(truth), label_count(pred));
  Eigen::MatrixXi agree = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || pred[i] < 0) throw PartitionError("negative label");
    ++agree(truth[i], pred[i]);
  }
  return agree;
}

std::vector<int> hungarian_assignment(const MatrixXd& cost) {
  if (cost.rows() != cost.cols())
    throw DimensionError("hungarian_assignment: cost matrix must be square");
  const auto n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials formulation; column 0 is a virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const int r0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (int c = 1; c <= n; ++c) assignment[static_cast<std::size_t>(match[c] - 1)] = c - 1;
  return assignment;
}

double misclustering_rate_enumerated(const LabelVector& truth, const LabelVector& pred) {
  const Eigen::MatrixXi agree = agreement_matrix(truth, pred);
  std::vector<int> perm(static_cast<std::size_t>(agree.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  long best = 0;
  do {
    best = std::max(best, matched(agree, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const auto n = static_cast<double>(truth.size());
  return static_cast<double>(static_cast<long>(truth.size()) - best) / n;
}

double misclustering_rate_hungarian(const LabelVector& truth, const LabelVector& pred) {
  const Eigen::MatrixXi agree = agreement_matrix(truth, pred);
  const long best = matched(agree, best_matching(agree));
  const auto n = static_cast<double>(truth.size());
  return static_cast<double>(static_cast<long>(truth.size()) - best) / n;
}

double misclustering_rate(const LabelVector& truth, const LabelVector& pred) {
  check_lengths(truth, pred);
  const int k = std::max(label_count(truth), label_count(pred));
  return k <= kEnumerationLimit ? misclustering_rate_enumerated(truth, pred)
                                : misclustering_rate_hungarian(truth, pred);
}

GroupwiseRate groupwise_mislabel(const LabelVector& truth, const LabelVector& pred) {
  check_lengths(truth, pred);
  const int k = label_count(truth);
  if (label_count(pred) != k)
    throw PartitionError("groupwise_mislabel: partitions have different numbers of groups");
  const Eigen::MatrixXi agree = agreement_matrix(truth, pred);
  const Eigen::VectorXi true_size = agree.rowwise().sum();
  const Eigen::VectorXi est_size = agree.colwise().sum().transpose();
  if (true_size.minCoeff() == 0 || est_size.minCoeff() == 0)
    throw PartitionError("groupwise_mislabel: empty group");

  // perm[a] = estimated group matched to true group a.
  auto worst = [&](const std::vector<int>& perm) {
    double w = 0.0;
    for (int a = 0; a < k; ++a) {
      const int g = perm[static_cast<std::size_t>(a)];
      const int both = agree(a, g);
      const double fp = static_cast<double>(est_size(g) - both) / est_size(g);
      const double fn = static_cast<double>(true_size(a) - both) / true_size(a);
      w = std::max({w, fp, fn});
    }
    return w;
  };

  GroupwiseRate out;
  if (k <= kEnumerationLimit) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      best = std::min(best, worst(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.value = best;
  } else {
    // Hungarian on -agreement gives row (true group) -> column (estimate).
    const std::vector<int> perm = hungarian_assignment(-agree.cast<double>());
    out.value = worst(perm);
    out.exact = false;
  }
  return out;
}

double adjusted_rand_index(const LabelVector& a, const LabelVector& b) {
  const Eigen::MatrixXi table = agreement_matrix(a, b);
  const auto n = static_cast<double>(a.size());
  double sum_cells = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    for (Eigen::Index j = 0; j < table.cols(); ++j) sum_cells += choose2(table(i, j));
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i) sum_a += choose2(table.row(i).sum());
  for (Eigen::Index j = 0; j < table.cols(); ++j) sum_b += choose2(table.col(j).sum());
  const double pairs = choose2(n);
  const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  const double numer = sum_cells - expected;
  if (denom == 0.0) return numer == 0.0 ? 1.0 : 0.0;
  return numer / denom;
}

SelectionScore selection_f1(const IndexSet& truth, const IndexSet& estimate) {
  IndexSet t = truth;
  IndexSet e = estimate;
  std::sort(t.begin(), t.end());
  std::sort(e.begin(), e.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  IndexSet both;
  std::set_intersection(t.begin(), t.end(), e.begin(), e.end(), std::back_inserter(both));
  SelectionScore out;
  const auto hits = static_cast<double>(both.size());
  out.precision = e.empty() ? 0.0 : hits / static_cast<double>(e.size());
  out.recall = t.empty() ? 0.0 : hits / static_cast<double>(t.size());
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

VectorXd snr_contributions(const CenterMatrix& centers,
                           const std::vector<Eigen::Index>& cluster_sizes,
                           const VectorXd& noise_sds, const IndexSet& support) {
  const Eigen::Index k = centers.rows();
  if (static_cast<Eigen::Index>(cluster_sizes.size()) != k)
    throw DimensionError("snr: one cluster size per center row required");
  if (noise_sds.size() != centers.cols())
    throw DimensionError("snr: one noise sd per column required");
  const double n = static_cast<double>(
      std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), Eigen::Index{0}));
  if (!(n > 0.0)) throw DomainError("snr: cluster sizes sum to zero");

  VectorXd out(static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    const Eigen::Index j = support[c];
    const double sd = noise_sds(j);
    if (!(sd > 0.0)) throw DomainError("snr: noise sd of column " + std::to_string(j) + " is not positive");
    double mean = 0.0;
    for (Eigen::Index a = 0; a < k; ++a)
      mean += static_cast<double>(cluster_sizes[static_cast<std::size_t>(a)]) * centers(a, j);
    mean /= n;
    double between = 0.0;
    for (Eigen::Index a = 0; a < k; ++a) {
      const double d = centers(a, j) - mean;
      between += static_cast<double>(cluster_sizes[static_cast<std::size_t>(a)]) * d * d;
    }
    out(static_cast<Eigen::Index>(c)) = between / (n * sd * sd);
  }
  return out;
}

double empirical_snr(const CenterMatrix& centers,
                     const std::vector<Eigen::Index>& cluster_sizes,
                     const VectorXd& noise_sds, const IndexSet& support) {
  if (support.empty()) throw DomainError("snr: empty support");
  return snr_contributions(centers, cluster_sizes, noise_sds, support).minCoeff();
}

Separation center_separation(const CenterMatrix& centers) {
  if (centers.rows() < 2) throw DimensionError("center_separation: need k >= 2");
  Separation out;
  out.delta_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index u = 0; u < centers.rows(); ++u)
    for (Eigen::Index v = u + 1; v < centers.rows(); ++v) {
      const double d = (centers.row(u) - centers.row(v)).norm();
      out.delta_min = std::min(out.delta_min, d);
      out.delta_max = std::max(out.delta_max, d);
    }
  if (out.delta_min == 0.0) {
    out.coincident = true;
    out.lambda = std::numeric_limits<double>::infinity();
  } else {
    out.lambda = out.delta_max / out.delta_min;
  }
  return out;
}

EvalReport evaluate(const LabelVector& truth, const LabelVector& pred,
                    const IndexSet* true_support, const IndexSet* est_support) {
  EvalReport r;
  r.misclustering = misclustering_rate(truth, pred);
  r.ari = adjusted_rand_index(truth, pred);
  try {
    r.groupwise_b = groupwise_mislabel(truth, pred);
  } catch (const PartitionError&) {
    r.groupwise_b.reset();
  }
  if (true_support && est_support) r.selection = selection_f1(*true_support, *est_support);
  return r;
}

void write_eval_csv(std::ostream& out, const EvalReport& r) {
  out << "misclustering,groupwise_b,groupwise_b_exact,ari";
  if (r.selection) out << ",f1,precision,recall";
  out << '\n' << csv::format_double(r.misclustering) << ',';
  if (r.groupwise_b)
    out << csv::format_double(r.groupwise_b->value) << ',' << (r.groupwise_b->exact ? 1 : 0);
  else
    out << "NA,NA";
  out << ',' << csv::format_double(r.ari);
  if (r.selection)
    out << ',' << csv::format_double(r.selection->f1) << ','
        << csv::format_double(r.selection->precision) << ','
        << csv::format_double(r.selection->recall);
  out << '\n';
}

void write_eval_text(std::ostream& out, const EvalReport& r) {
  out << "misclustering = " << csv::format_double(r.misclustering) << '\n';
  if (r.groupwise_b) {
    out << "groupwise_b = " << csv::format_double(r.groupwise_b->value) << '\n'
        << "groupwise_b_exact = " << (r.groupwise_b->exact ? "true" : "false") << '\n';
  } else {
    out << "groupwise_b = NA\n";
  }
  out << "ari = " << csv::format_double(r.ari) << '\n';
  if (r.selection)
    out << "f1 = " << csv::format_double(r.selection->f1) << '\n'
        << "precision = " << csv::format_double(r.selection->precision) << '\n'
        << "recall = " << csv::format_double(r.selection->recall) << '\n';
}

}  // namespace scfs
