#include "scfs/spectral.hpp"

#include <string>

#include "scfs/error.hpp"

namespace scfs {

SpectralResult spectral_cluster_detailed(const MatrixXd& y, Eigen::Index k,
                                         const KMeansParams& params,
                                         const Rng& rng) {
  if (k < 2 || k > std::min(y.rows(), y.cols()))
    throw DimensionError("spectral_cluster: k=" + std::to_string(k) +
                         " outside [2, min(n, p)]");
  SpectralResult out;
  out.basis = top_k_left_singular(y, k);
  out.kmeans = kmeans(out.basis.u, k, params, rng);
  out.labels = out.kmeans.labels;
  return out;
}

}  // namespace scfs
