#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scfs/feature_select.hpp"
#include "scfs/kmeans.hpp"
#include "scfs/matrix_core.hpp"

namespace scfs {

enum class Variant { kScfs1, kScfs2 };

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

struct PipelineConfig {
  std::optional<int> k;  // nullopt = choose automatically
  double tau = 0.9;
  std::optional<int> lloyd_rounds;  // nullopt = ceil(4 ln n)
  KMeansParams kmeans;
  std::uint64_t seed = 0;
  Variant variant = Variant::kScfs2;
  std::optional<Eigen::Index> fallback_top_m;  // nullopt = ceil(0.05 p)
  // Select the top_m lowest scores instead of thresholding at tau.
  std::optional<Eigen::Index> top_m;

  // Throws DomainError on out-of-range values.
  void validate() const;
};

struct KSelection {
  int k = 0;
  std::vector<double> xi;  // xi[k-1] for k = 1..k_max
  double max_second_difference = 0.0;
  bool low_confidence = false;  // max second difference below 0.02
};

inline constexpr double kFlatElbowCutoff = 0.02;

// For k = 1..k_max, cluster the top-k singular basis rows with k-means and
// record the fraction of the data's variation explained by those labels; the
// change point of that curve (largest discrete second difference) is the pick.
KSelection select_num_clusters(const DataMatrix& m, int k_max,
                               const KMeansParams& params, const Rng& rng);

struct PipelineDiagnostics {
  std::uint64_t seed = 0;
  bool standardized_input = false;
  bool selection_fallback = false;
  std::optional<KSelection> k_selection;
  double stage1_objective = 0.0;
  int lloyd_rounds = 0;
  int lloyd_rounds_run = 0;
  double final_objective = 0.0;
};

struct PipelineReport {
  LabelVector labels;
  IndexSet selected;
  FeatureScores scores;
  LabelVector stage1_labels;
  LabelVector stage3_spectral_labels;  // the SC-FS1 output
  int k_used = 0;
  Variant variant = Variant::kScfs2;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  double tau = 0.9;
  PipelineDiagnostics diagnostics;
};

// Spectral clustering on all columns, R^2 feature selection against those
// labels, then spectral clustering (and, for SC-FS2, Lloyd rounds) on the
// selected columns. Unstandardized input is standardized first.
PipelineReport run_scfs(const DataMatrix& m, const PipelineConfig& cfg);

// Key = value text document; see README for the schema.
void write_report(std::ostream& out, const PipelineReport& report);
void write_report(const std::string& path, const PipelineReport& report);

}  // namespace scfs
