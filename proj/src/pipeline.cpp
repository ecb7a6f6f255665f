#include "scfs/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "scfs/csv.hpp"
#include "scfs/error.hpp"
#include "scfs/speclloyd.hpp"
#include "scfs/spectral.hpp"

namespace scfs {

std::string to_string(Variant v) {
  return v == Variant::kScfs1 ? "scfs1" : "scfs2";
}

Variant parse_variant(const std::string& text) {
  if (text == "scfs1") return Variant::kScfs1;
  if (text == "scfs2") return Variant::kScfs2;
  throw DomainError("unknown variant '" + text + "' (expected scfs1 or scfs2)");
}

void PipelineConfig::validate() const {
  if (k && *k < 2) throw DomainError("k must be at least 2");
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
  if (lloyd_rounds && *lloyd_rounds < 0)
    throw DomainError("lloyd rounds must be nonnegative");
  if (kmeans.restarts < 1 || kmeans.max_iter < 1)
    throw DomainError("k-means restarts and max_iter must be at least 1");
  if (fallback_top_m && *fallback_top_m < 1)
    throw DomainError("fallback top-m must be at least 1");
  if (top_m && *top_m < 1) throw DomainError("top-m must be at least 1");
}

KSelection select_num_clusters(const DataMatrix& m, int k_max,
                               const KMeansParams& params, const Rng& rng) {
  if (k_max < 3) throw DimensionError("select_num_clusters: k_max must be >= 3");
  if (k_max > m.rows())
    throw DimensionError("select_num_clusters: k_max exceeds n");
  if (k_max > m.cols())
    throw DimensionError("select_num_clusters: k_max exceeds p");

  const EigenBasis basis = top_k_left_singular(m, k_max);
  KSelection out;
  out.xi.assign(static_cast<std::size_t>(k_max), 0.0);
  for (int k = 2; k <= k_max; ++k) {
    const MatrixXd u = basis.u.leftCols(k);
    const KMeansResult km = kmeans(u, k, params, rng.split(static_cast<std::uint64_t>(k)));
    // Variation of the data explained by the clustering of the basis rows.
    const FeatureScores fs = score_features(m.values(), km.labels);
    const double total = fs.total_ss.sum();
    out.xi[static_cast<std::size_t>(k - 1)] =
        total > 0.0 ? 1.0 - fs.residual_ss.sum() / total : 0.0;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 2; k <= k_max - 1; ++k) {
    const double prev = out.xi[static_cast<std::size_t>(k - 2)];
    const double cur = out.xi[static_cast<std::size_t>(k - 1)];
    const double next = out.xi[static_cast<std::size_t>(k)];
    const double d2 = (cur - prev) - (next - cur);
    if (d2 > best) {
      best = d2;
      out.k = k;
    }
  }
  out.max_second_difference = best;
  out.low_confidence = best < kFlatElbowCutoff;
  return out;
}

PipelineReport run_scfs(const DataMatrix& input, const PipelineConfig& cfg) {
  cfg.validate();
  const DataMatrix m = input.standardized() ? input : standardize(input);
  const Rng root(cfg.seed);

  PipelineReport report;
  report.n = m.rows();
  report.p = m.cols();
  report.variant = cfg.variant;
  report.tau = cfg.tau;
  report.diagnostics.seed = cfg.seed;
  report.diagnostics.standardized_input = input.standardized();

  if (cfg.k) {
    report.k_used = *cfg.k;
  } else {
    const int k_max = static_cast<int>(std::min<Eigen::Index>({20, m.rows(), m.cols()}));
    report.diagnostics.k_selection = select_num_clusters(m, k_max, cfg.kmeans, root.split(0));
    report.k_used = report.diagnostics.k_selection->k;
  }
  const Eigen::Index k = report.k_used;

  const SpectralResult stage1 =
      spectral_cluster_detailed(m.values(), k, cfg.kmeans, root.split(1));
  report.stage1_labels = stage1.labels;
  report.diagnostics.stage1_objective = stage1.kmeans.objective;

  report.scores = score_features(m, report.stage1_labels);
  report.scores.tau = cfg.tau;
  if (cfg.top_m) {
    report.selected = select_top_m(report.scores, std::min(*cfg.top_m, m.cols()));
  } else {
    try {
      report.selected = select_threshold(report.scores, cfg.tau);
    } catch (const SelectionEmptyError&) {
      const Eigen::Index fallback = cfg.fallback_top_m.value_or(
          static_cast<Eigen::Index>(std::ceil(0.05 * static_cast<double>(m.cols()))));
      report.selected = select_top_m(report.scores, std::min(fallback, m.cols()));
      report.diagnostics.selection_fallback = true;
    }
  }
  report.scores.selected = report.selected;

  const int rounds = cfg.variant == Variant::kScfs1
                         ? 0
                         : cfg.lloyd_rounds.value_or(default_lloyd_rounds(m.rows()));
  const SpecLloydResult stage3 =
      spec_lloyd(m, k, report.selected, rounds, cfg.kmeans, root.split(3));
  report.stage3_spectral_labels = stage3.initial_labels;
  report.labels = stage3.labels;
  report.diagnostics.lloyd_rounds = rounds;
  report.diagnostics.lloyd_rounds_run = stage3.rounds_run;
  report.diagnostics.final_objective = stage3.objective_trace.back();
  return report;
}

namespace {

template <typename Seq>
std::string join(const Seq& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<typename Seq::value_type>)
      out += csv::format_double(values[i]);
    else
      out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

void write_report(std::ostream& out, const PipelineReport& r) {
  const auto& d = r.diagnostics;
  out << "# scfs pipeline report\n"
      << "format_version = 1\n"
      << "n = " << r.n << '\n'
      << "p = " << r.p << '\n'
      << "k = " << r.k_used << '\n'
      << "variant = " << to_string(r.variant) << '\n'
      << "seed = " << d.seed << '\n'
      << "tau = " << csv::format_double(r.tau) << '\n'
      << "input_standardized = " << (d.standardized_input ? "true" : "false") << '\n'
      << "selection_fallback = " << (d.selection_fallback ? "true" : "false") << '\n'
      << "selected_count = " << r.selected.size() << '\n'
      << "selected = " << join(r.selected) << '\n'
      << "stage1_objective = " << csv::format_double(d.stage1_objective) << '\n'
      << "lloyd_rounds = " << d.lloyd_rounds << '\n'
      << "lloyd_rounds_run = " << d.lloyd_rounds_run << '\n'
      << "final_objective = " << csv::format_double(d.final_objective) << '\n';
  if (d.k_selection) {
    out << "k_selection_xi = " << join(d.k_selection->xi) << '\n'
        << "k_selection_max_second_difference = "
        << csv::format_double(d.k_selection->max_second_difference) << '\n'
        << "k_selection_low_confidence = "
        << (d.k_selection->low_confidence ? "true" : "false") << '\n';
  }
  out << "stage1_labels = " << join(r.stage1_labels) << '\n'
      << "stage3_spectral_labels = " << join(r.stage3_spectral_labels) << '\n'
      << "labels = " << join(r.labels) << '\n';
}

void write_report(const std::string& path, const PipelineReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_report(out, report);
}

}  // namespace scfs
