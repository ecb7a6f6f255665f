#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scfs/kmeans.hpp"
#include "scfs/synthgen.hpp"

namespace scfs {

enum class ExperimentKind {
  kFeatureSelection,  // F1 of tau-thresholded R^2 selection vs. corrupted labels
  kMethodComparison,  // specLloyd / SC-FS1 / SC-FS2 mis-clustering
  kSpectralSweep,     // spectral clustering error along one parameter
};

std::string to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kMethodComparison;
  Eigen::Index k = 4;
  Eigen::Index p = 500;
  Eigen::Index s = 100;
  Eigen::Index n = 100;  // spectral_sweep only
  std::vector<double> sigma_k{4.0};
  std::vector<double> n_over_logp;  // feature_selection, method_comparison
  std::vector<double> eta;          // feature_selection
  std::string sweep;                // spectral_sweep: "p", "n" or "sigma_k"
  std::vector<double> sweep_values;
  Noise noise = Noise::kGaussian;
  LogBase log_base = LogBase::kNatural;
  int repetitions = 50;
  std::uint64_t seed = 1;
  double tau = 0.9;
  // Select the top_m lowest scores instead of thresholding at tau.
  std::optional<Eigen::Index> top_m;
  KMeansParams kmeans;

  // Throws ConfigError when required keys for the kind are missing.
  void validate() const;
};

// Parse the `key = value` format. Lists are comma separated; '#' starts a
// comment. Throws ConfigError naming the offending line.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

// Rectangular numeric table written as CSV with a header row.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  double at(std::size_t row, const std::string& column) const;
};

struct ExperimentResult {
  ResultTable table;
  // spectral_sweep only: least-squares slope of mean error on sweep value.
  double slope = 0.0;
};

// Number of worker threads: explicit value if positive, else SCFS_JOBS,
// else hardware concurrency.
int resolve_jobs(int requested);

// Run tasks [0, count) on up to `jobs` threads. Each task writes only its
// own output slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& task);

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs);

void write_table_csv(std::ostream& out, const ResultTable& table);
void write_table_csv(const std::string& path, const ResultTable& table);

// Least-squares slope of y on x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace scfs
