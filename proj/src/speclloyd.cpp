#include "scfs/speclloyd.hpp"

#include <cmath>
#include <string>

#include "scfs/error.hpp"
#include "scfs/spectral.hpp"

namespace scfs {

int default_lloyd_rounds(Eigen::Index n) {
  return static_cast<int>(std::ceil(4.0 * std::log(static_cast<double>(n))));
}

SpecLloydResult spec_lloyd(const DataMatrix& m, Eigen::Index k,
                           const IndexSet& selected, int rounds,
                           const KMeansParams& params, const Rng& rng) {
  if (selected.empty()) throw SelectionEmptyError("spec_lloyd: empty feature set");
  if (k < 2 || k > m.rows())
    throw DimensionError("spec_lloyd: k=" + std::to_string(k) + " outside [2, n]");
  if (rounds < 0) throw DimensionError("spec_lloyd: rounds must be nonnegative");

  const MatrixXd restricted = m.select_columns(selected).values();
  SpecLloydResult out;
  if (restricted.cols() >= k)
    out.initial_labels = spectral_cluster_detailed(restricted, k, params, rng).labels;
  else
    out.initial_labels = kmeans(restricted, k, params, rng).labels;

  KMeansResult lloyd = lloyd_from_labels(restricted, out.initial_labels, k, rounds);
  out.labels = std::move(lloyd.labels);
  out.centers = std::move(lloyd.centers);
  out.rounds_run = lloyd.iterations;
  out.objective_trace = std::move(lloyd.objective_trace);
  return out;
}

}  // namespace scfs
