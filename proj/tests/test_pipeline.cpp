#include <doctest.h>

#include <random>
#include <sstream>

#include "scfs/error.hpp"
#include "scfs/metrics.hpp"
#include "scfs/pipeline.hpp"
#include "scfs/synthgen.hpp"

using namespace scfs;

namespace {

SynthData mixture(std::uint64_t seed, Eigen::Index k = 3, double sigma_k = 6.0,
                  bool zero_noise = false) {
  SynthSpec spec;
  spec.k = k;
  spec.n = 120;
  spec.p = 300;
  spec.s = 30;
  spec.sigma_k = sigma_k;
  spec.zero_noise = zero_noise;
  spec.seed = seed;
  return generate_data(spec);
}

std::string report_text(const PipelineReport& r) {
  std::ostringstream out;
  write_report(out, r);
  return out.str();
}

std::string without_line(std::string text, const std::string& key) {
  const auto pos = text.find("\n" + key + " = ");
  if (pos == std::string::npos) return text;
  const auto end = text.find('\n', pos + 1);
  return text.erase(pos, end - pos);
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(parse_variant("scfs1") == Variant::kScfs1);
  CHECK(parse_variant("scfs2") == Variant::kScfs2);
  CHECK(to_string(Variant::kScfs1) == "scfs1");
  CHECK_THROWS_AS(parse_variant("scfs3"), DomainError);
}

TEST_CASE("PipelineConfig::validate") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tau = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.k = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.lloyd_rounds = -1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.kmeans.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.fallback_top_m = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("run_scfs: noiseless data is recovered by both variants") {
  const SynthData d = mixture(1, 3, 4.0, true);
  for (Variant v : {Variant::kScfs1, Variant::kScfs2}) {
    PipelineConfig cfg;
    cfg.k = 3;
    cfg.variant = v;
    cfg.seed = 5;
    const PipelineReport r = run_scfs(d.data, cfg);
    CHECK(misclustering_rate(d.labels, r.labels) == 0.0);
    CHECK(r.labels.size() == 120);
    for (auto j : r.selected) CHECK(j < 30);
  }
}

TEST_CASE("run_scfs: identical inputs give byte-identical reports") {
  const SynthData d = mixture(2);
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.seed = 11;
  CHECK(report_text(run_scfs(d.data, cfg)) == report_text(run_scfs(d.data, cfg)));
}

TEST_CASE("run_scfs: SC-FS2 with zero rounds matches SC-FS1") {
  const SynthData d = mixture(3, 3, 2.0);
  PipelineConfig a;
  a.k = 3;
  a.seed = 9;
  a.variant = Variant::kScfs1;
  PipelineConfig b = a;
  b.variant = Variant::kScfs2;
  b.lloyd_rounds = 0;
  const PipelineReport ra = run_scfs(d.data, a);
  const PipelineReport rb = run_scfs(d.data, b);
  CHECK(ra.labels == rb.labels);
  CHECK(without_line(report_text(ra), "variant") == without_line(report_text(rb), "variant"));
}

TEST_CASE("run_scfs: variants share stage-1 labels and the selected set") {
  const SynthData d = mixture(4, 3, 2.0);
  PipelineConfig a;
  a.k = 3;
  a.seed = 13;
  a.variant = Variant::kScfs1;
  PipelineConfig b = a;
  b.variant = Variant::kScfs2;
  const PipelineReport ra = run_scfs(d.data, a);
  const PipelineReport rb = run_scfs(d.data, b);
  CHECK(ra.stage1_labels == rb.stage1_labels);
  CHECK(ra.selected == rb.selected);
  CHECK(ra.labels == rb.stage3_spectral_labels);
}

TEST_CASE("run_scfs: empty selection falls back to top-m") {
  const SynthData d = mixture(5, 3, 0.5);
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.tau = 0.01;
  const PipelineReport r = run_scfs(d.data, cfg);
  CHECK(r.diagnostics.selection_fallback);
  CHECK(r.selected.size() == 15);  // ceil(0.05 * 300)

  cfg.fallback_top_m = 7;
  const PipelineReport r7 = run_scfs(d.data, cfg);
  CHECK(r7.selected.size() == 7);
  CHECK(report_text(r7).find("selection_fallback = true") != std::string::npos);
}

TEST_CASE("run_scfs: explicit top-m selection") {
  const SynthData d = mixture(6);
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.top_m = 30;
  const PipelineReport r = run_scfs(d.data, cfg);
  CHECK(r.selected.size() == 30);
  CHECK_FALSE(r.diagnostics.selection_fallback);
}

TEST_CASE("run_scfs: unstandardized input is standardized first") {
  const SynthData d = mixture(7);
  PipelineConfig cfg;
  cfg.k = 3;
  cfg.seed = 3;
  const PipelineReport from_raw = run_scfs(DataMatrix(d.raw), cfg);
  const PipelineReport from_std = run_scfs(d.data, cfg);
  CHECK_FALSE(from_raw.diagnostics.standardized_input);
  CHECK(from_std.diagnostics.standardized_input);
  CHECK(from_raw.labels == from_std.labels);
}

TEST_CASE("select_num_clusters: xi curve and well-separated clusters") {
  int hits = 0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    const SynthData d = mixture(100 + static_cast<std::uint64_t>(r), 4, 12.0);
    const KSelection ks = select_num_clusters(d.data, 10, {}, Rng(static_cast<std::uint64_t>(r)));
    REQUIRE(ks.xi.size() == 10);
    CHECK(ks.xi[0] == 0.0);
    CHECK(ks.xi[9] >= ks.xi[1] - 0.05);
    hits += ks.k == 4;
  }
  CHECK(hits >= runs * 9 / 10);
}

TEST_CASE("select_num_clusters: pure noise is flagged as low confidence") {
  int flagged = 0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(r));
    std::normal_distribution<double> normal;
    MatrixXd y(100, 200);
    for (auto& v : y.reshaped()) v = normal(gen);
    const KSelection ks = select_num_clusters(standardize(DataMatrix(y)), 20, {}, Rng(1));
    flagged += ks.low_confidence;
  }
  CHECK(flagged >= runs * 9 / 10);
}

TEST_CASE("run_scfs: automatic k") {
  const SynthData d = mixture(8, 4, 12.0);
  PipelineConfig cfg;
  const PipelineReport r = run_scfs(d.data, cfg);
  REQUIRE(r.diagnostics.k_selection.has_value());
  CHECK(r.k_used == 4);
  CHECK(report_text(r).find("k_selection_xi = ") != std::string::npos);
}

TEST_CASE("select_num_clusters: argument checks") {
  const SynthData d = mixture(9);
  CHECK_THROWS_AS(select_num_clusters(d.data, 2, {}, Rng(1)), DimensionError);
  CHECK_THROWS_AS(select_num_clusters(d.data, 121, {}, Rng(1)), DimensionError);
}
