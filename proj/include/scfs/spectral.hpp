#pragma once

#include "scfs/kmeans.hpp"
#include "scfs/matrix_core.hpp"

namespace scfs {

struct SpectralResult {
  LabelVector labels;
  EigenBasis basis;
  KMeansResult kmeans;
};

// k-means on the (unweighted, unnormalised) rows of the top-k left singular
// basis of the data. Requires 2 <= k <= min(n, p).
SpectralResult spectral_cluster_detailed(const MatrixXd& y, Eigen::Index k,
                                         const KMeansParams& params,
                                         const Rng& rng);

inline LabelVector spectral_cluster(const DataMatrix& m, Eigen::Index k,
                                    const KMeansParams& params, const Rng& rng) {
  return spectral_cluster_detailed(m.values(), k, params, rng).labels;
}

}  // namespace scfs
