#include "scfs/kmeans.hpp"

#include <limits>
#include <string>

#include "scfs/error.hpp"

namespace scfs {

std::vector<Eigen::Index> seed_plus_plus_indices(const MatrixXd& points,
                                                 Eigen::Index k, Rng& rng) {
  const Eigen::Index n = points.rows();
  if (n < 1) throw DimensionError("seed_plus_plus: no points");
  if (k < 1 || k > n)
    throw DimensionError("seed_plus_plus: k=" + std::to_string(k) +
                         " outside [1, n=" + std::to_string(n) + "]");

  std::vector<Eigen::Index> chosen;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  const auto first = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
  chosen.push_back(first);
  taken[static_cast<std::size_t>(first)] = true;

  VectorXd dist(n);
  for (Eigen::Index i = 0; i < n; ++i)
    dist(i) = (points.row(i) - points.row(first)).squaredNorm();

  while (static_cast<Eigen::Index>(chosen.size()) < k) {
    const double total = dist.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double u = rng.uniform() * total;
      double cum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (dist(i) <= 0.0) continue;
        cum += dist(i);
        pick = i;
        if (cum > u) break;
      }
    } else {
      std::vector<Eigen::Index> free;
      for (Eigen::Index i = 0; i < n; ++i)
        if (!taken[static_cast<std::size_t>(i)]) free.push_back(i);
      pick = free[rng.index(free.size())];
    }
    chosen.push_back(pick);
    taken[static_cast<std::size_t>(pick)] = true;
    for (Eigen::Index i = 0; i < n; ++i)
      dist(i) = std::min(dist(i), (points.row(i) - points.row(pick)).squaredNorm());
  }
  return chosen;
}

CenterMatrix seed_plus_plus(const MatrixXd& points, Eigen::Index k, Rng& rng) {
  const auto idx = seed_plus_plus_indices(points, k, rng);
  CenterMatrix centers(k, points.cols());
  for (Eigen::Index a = 0; a < k; ++a) centers.row(a) = points.row(idx[static_cast<std::size_t>(a)]);
  return centers;
}

double kmeans_objective(const MatrixXd& points, const LabelVector& labels,
                        const CenterMatrix& centers) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    total += (points.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  return total;
}

LabelVector assign_nearest(const MatrixXd& points, const CenterMatrix& centers) {
  LabelVector labels(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index a = 0; a < centers.rows(); ++a) {
      const double d = (points.row(i) - centers.row(a)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(a);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
  }
  return labels;
}

CenterMatrix update_centers(const MatrixXd& points, LabelVector& labels,
                            Eigen::Index k) {
  const Eigen::Index n = points.rows();
  if (k > n) throw DimensionError("update_centers: k exceeds number of points");
  CenterMatrix centers = CenterMatrix::Zero(k, points.cols());
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    centers.row(l) += points.row(i);
    ++sizes[static_cast<std::size_t>(l)];
  }
  for (Eigen::Index a = 0; a < k; ++a)
    if (sizes[static_cast<std::size_t>(a)] > 0)
      centers.row(a) /= static_cast<double>(sizes[static_cast<std::size_t>(a)]);

  for (Eigen::Index a = 0; a < k; ++a) {
    if (sizes[static_cast<std::size_t>(a)] > 0) continue;
    Eigen::Index far = -1;
    double far_d = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(l)] < 2) continue;
      const double d = (points.row(i) - centers.row(l)).squaredNorm();
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    const int donor = labels[static_cast<std::size_t>(far)];
    labels[static_cast<std::size_t>(far)] = static_cast<int>(a);
    sizes[static_cast<std::size_t>(a)] = 1;
    centers.row(a) = points.row(far);
    const auto m = static_cast<double>(sizes[static_cast<std::size_t>(donor)]);
    centers.row(donor) = (centers.row(donor) * m - points.row(far)) / (m - 1.0);
    --sizes[static_cast<std::size_t>(donor)];
  }
  return centers;
}

KMeansResult lloyd_from_labels(const MatrixXd& points, LabelVector labels,
                               Eigen::Index k, int max_iter) {
  if (static_cast<Eigen::Index>(labels.size()) != points.rows())
    throw DimensionError("lloyd: label length does not match number of points");
  if (max_iter < 0) throw DimensionError("lloyd: max_iter must be nonnegative");

  KMeansResult res;
  CenterMatrix centers = update_centers(points, labels, k);
  res.objective_trace.push_back(kmeans_objective(points, labels, centers));
  int it = 0;
  while (it < max_iter) {
    ++it;
    LabelVector next = assign_nearest(points, centers);
    const bool unchanged = next == labels;
    labels = std::move(next);
    if (unchanged) break;
    centers = update_centers(points, labels, k);
    res.objective_trace.push_back(kmeans_objective(points, labels, centers));
  }
  res.objective = res.objective_trace.back();
  res.labels = std::move(labels);
  res.centers = std::move(centers);
  res.iterations = it;
  return res;
}

KMeansResult lloyd_run(const MatrixXd& points, const CenterMatrix& init_centers,
                       int max_iter, int restarts, const Rng& rng) {
  if (max_iter < 1) throw DimensionError("lloyd_run: max_iter must be >= 1");
  if (restarts < 1) throw DimensionError("lloyd_run: restarts must be >= 1");
  const Eigen::Index k = init_centers.rows();
  if (k < 1 || k > points.rows())
    throw DimensionError("lloyd_run: need 1 <= k <= n");
  if (init_centers.cols() != points.cols())
    throw DimensionError("lloyd_run: center dimension does not match points");

  KMeansResult best;
  std::vector<double> objectives;
  for (int r = 0; r < restarts; ++r) {
    CenterMatrix start;
    if (r == 0) {
      start = init_centers;
    } else {
      Rng stream = rng.split(static_cast<std::uint64_t>(r));
      start = seed_plus_plus(points, k, stream);
    }
    KMeansResult res =
        lloyd_from_labels(points, assign_nearest(points, start), k, max_iter);
    res.restart_index = r;
    objectives.push_back(res.objective);
    if (r == 0 || res.objective < best.objective) best = std::move(res);
  }
  best.restart_objectives = std::move(objectives);
  return best;
}

KMeansResult kmeans(const MatrixXd& points, Eigen::Index k,
                    const KMeansParams& params, const Rng& rng) {
  if (k < 1 || k > points.rows())
    throw DimensionError("kmeans: k=" + std::to_string(k) + " outside [1, n=" +
                         std::to_string(points.rows()) + "]");
  Rng first = rng.split(0);
  return lloyd_run(points, seed_plus_plus(points, k, first), params.max_iter,
                   params.restarts, rng);
}

}  // namespace scfs
