#pragma once

#include "scfs/kmeans.hpp"
#include "scfs/matrix_core.hpp"

namespace scfs {

struct SpecLloydResult {
  LabelVector initial_labels;  // spectral clustering on the selected columns
  LabelVector labels;          // after the Lloyd rounds
  CenterMatrix centers;        // k x |selected|
  int rounds_run = 0;
  std::vector<double> objective_trace;
};

// ceil(4 * ln n), the default number of Lloyd rounds.
int default_lloyd_rounds(Eigen::Index n);

// Spectral initialisation on the selected columns followed by at most
// `rounds` Lloyd rounds on the same columns, stopping early at a fixed point.
// When fewer than k columns are selected the spectral basis would be rank
// deficient, so the initial labels come from k-means on the columns directly.
SpecLloydResult spec_lloyd(const DataMatrix& m, Eigen::Index k,
                           const IndexSet& selected, int rounds,
                           const KMeansParams& params, const Rng& rng);

}  // namespace scfs
