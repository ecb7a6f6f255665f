// Command-line front end: cluster, synth, eval, experiment.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "scfs/csv.hpp"
#include "scfs/error.hpp"
#include "scfs/experiment.hpp"
#include "scfs/metrics.hpp"
#include "scfs/pipeline.hpp"
#include "scfs/synthgen.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kIo = 2,
  kInvalidSpec = 3,
  kEvalMismatch = 4,
  kConfig = 5,
  kNumerical = 6,
};

int report_error(const std::exception& e, int code) {
  std::cerr << "scfs: error: " << e.what() << '\n';
  return code;
}

// Map library exceptions to the documented exit codes.
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const scfs::IoError& e) {
    return report_error(e, kIo);
  } catch (const scfs::ParseError& e) {
    return report_error(e, kIo);
  } catch (const scfs::ConfigError& e) {
    return report_error(e, kConfig);
  } catch (const scfs::NumericalError& e) {
    return report_error(e, kNumerical);
  } catch (const scfs::Error& e) {
    return report_error(e, kInvalidSpec);
  }
}

struct ClusterArgs {
  std::string input;
  std::string k = "auto";
  std::string variant = "scfs2";
  double tau = 0.9;
  std::uint64_t seed = 0;
  std::optional<int> lloyd_rounds;
  int restarts = 10;
  int max_iter = 100;
  std::optional<long> top_m;
  std::optional<long> fallback_top_m;
  std::string out_labels = "labels.csv";
  std::string out_scores;
  std::string out_report;
};

int cmd_cluster(const ClusterArgs& a) {
  scfs::PipelineConfig cfg;
  if (a.k != "auto") {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(a.k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != a.k.size()) throw scfs::DomainError("--k must be an integer or 'auto'");
    cfg.k = k;
  }
  cfg.variant = scfs::parse_variant(a.variant);
  cfg.tau = a.tau;
  cfg.seed = a.seed;
  cfg.lloyd_rounds = a.lloyd_rounds;
  cfg.kmeans.restarts = a.restarts;
  cfg.kmeans.max_iter = a.max_iter;
  if (a.top_m) cfg.top_m = *a.top_m;
  if (a.fallback_top_m) cfg.fallback_top_m = *a.fallback_top_m;
  cfg.validate();

  const auto table = scfs::csv::read_matrix(a.input);
  const scfs::PipelineReport report = scfs::run_scfs(scfs::DataMatrix(table.values), cfg);

  scfs::csv::write_labels(a.out_labels, report.labels);
  if (!a.out_scores.empty()) scfs::write_scores_csv(a.out_scores, report.scores);
  if (!a.out_report.empty()) scfs::write_report(a.out_report, report);

  std::cout << "n=" << report.n << " p=" << report.p << " k=" << report.k_used
            << " variant=" << scfs::to_string(report.variant)
            << " selected=" << report.selected.size()
            << " fallback=" << (report.diagnostics.selection_fallback ? "yes" : "no")
            << " objective=" << scfs::csv::format_double(report.diagnostics.final_objective)
            << '\n';
  if (report.diagnostics.selection_fallback)
    std::cerr << "scfs: warning: no feature scored at or below tau; used the "
              << report.selected.size() << " lowest scores instead\n";
  return kOk;
}

struct SynthArgs {
  long k = 4;
  std::optional<long> n;
  std::optional<double> n_over_logp;
  long p = 500;
  long s = 100;
  double sigma_k = 4.0;
  std::string noise = "gaussian";
  std::string log_base = "e";
  std::uint64_t seed = 0;
  bool balanced = false;
  bool raw = false;
  std::string out_data = "data.csv";
  std::string out_labels = "truth.csv";
  std::string out_support = "support.csv";
};

int cmd_synth(const SynthArgs& a) {
  scfs::SynthSpec spec;
  spec.k = a.k;
  spec.p = a.p;
  spec.s = a.s;
  spec.sigma_k = a.sigma_k;
  spec.noise = scfs::parse_noise(a.noise);
  spec.seed = a.seed;
  spec.balanced = a.balanced;
  if (a.n && a.n_over_logp) throw scfs::DomainError("give either --n or --n-over-logp");
  if (a.n_over_logp) {
    if (!(*a.n_over_logp > 0.0)) throw scfs::DomainError("--n-over-logp must be positive");
    if (a.log_base != "e" && a.log_base != "10")
      throw scfs::DomainError("--log-base must be e or 10");
    spec.n = scfs::n_for_ratio(*a.n_over_logp, spec.p,
                               a.log_base == "e" ? scfs::LogBase::kNatural : scfs::LogBase::kTen);
  } else if (a.n) {
    spec.n = *a.n;
  } else {
    throw scfs::DomainError("one of --n or --n-over-logp is required");
  }
  spec.validate();
  if (spec.n < 2) throw scfs::DomainError("n must be at least 2");

  const scfs::SynthData data = scfs::generate_data(spec);
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < spec.p; ++j) header.push_back("x" + std::to_string(j));
  scfs::csv::write_matrix(a.out_data, a.raw ? data.raw : data.data.values(), header);
  scfs::csv::write_labels(a.out_labels, data.labels);
  scfs::csv::write_index_set(a.out_support, data.support);
  std::cout << "n=" << spec.n << " p=" << spec.p << " k=" << spec.k << " s=" << spec.s
            << " sigma_k=" << scfs::csv::format_double(spec.sigma_k)
            << " noise=" << scfs::to_string(spec.noise) << '\n';
  return kOk;
}

struct EvalArgs {
  std::string truth;
  std::string pred;
  std::string true_support;
  std::string est_support;
  std::string out;
};

int cmd_eval(const EvalArgs& a) {
  const scfs::LabelVector truth = scfs::csv::read_labels(a.truth);
  const scfs::LabelVector pred = scfs::csv::read_labels(a.pred);
  if (truth.size() != pred.size()) {
    std::cerr << "scfs: error: label files differ in length (" << truth.size() << " vs "
              << pred.size() << ")\n";
    return kEvalMismatch;
  }
  if (a.true_support.empty() != a.est_support.empty())
    throw scfs::DomainError("--true-support and --est-support go together");
  std::optional<scfs::IndexSet> ts, es;
  if (!a.true_support.empty()) {
    ts = scfs::csv::read_index_set(a.true_support);
    es = scfs::csv::read_index_set(a.est_support);
  }
  const scfs::EvalReport report =
      scfs::evaluate(truth, pred, ts ? &*ts : nullptr, es ? &*es : nullptr);
  scfs::write_eval_text(std::cout, report);
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw scfs::IoError("cannot open '" + a.out + "' for writing");
    scfs::write_eval_csv(out, report);
  }
  return kOk;
}

struct ExperimentArgs {
  std::string config;
  std::string out = "results.csv";
  int jobs = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
  const scfs::ExperimentConfig cfg = scfs::load_experiment_config(a.config);
  const scfs::ExperimentResult result = scfs::run_experiment(cfg, scfs::resolve_jobs(a.jobs));
  scfs::write_table_csv(a.out, result.table);
  scfs::write_table_csv(std::cout, result.table);
  if (cfg.kind == scfs::ExperimentKind::kSpectralSweep)
    std::cout << "slope=" << scfs::csv::format_double(result.slope) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral clustering with R^2 feature selection"};
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "Run the clustering pipeline on a CSV matrix");
  cluster->add_option("--input", ca.input, "Numeric CSV, one sample per row")->required();
  cluster->add_option("--k", ca.k, "Number of clusters or 'auto'");
  cluster->add_option("--variant", ca.variant, "scfs1 or scfs2");
  cluster->add_option("--tau", ca.tau, "Feature selection threshold in (0,1)");
  cluster->add_option("--seed", ca.seed);
  cluster->add_option("--lloyd-rounds", ca.lloyd_rounds, "Default ceil(4 ln n)");
  cluster->add_option("--restarts", ca.restarts, "k-means restarts");
  cluster->add_option("--max-iter", ca.max_iter, "k-means iterations per restart");
  cluster->add_option("--top-m", ca.top_m, "Select the m lowest scores instead of thresholding");
  cluster->add_option("--fallback-top-m", ca.fallback_top_m, "Default ceil(0.05 p)");
  cluster->add_option("--out-labels", ca.out_labels);
  cluster->add_option("--out-scores", ca.out_scores);
  cluster->add_option("--out-report", ca.out_report);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate sparse Gaussian mixture data");
  synth->add_option("--k", sa.k);
  synth->add_option("--n", sa.n);
  synth->add_option("--n-over-logp", sa.n_over_logp, "n = ceil(ratio * log p)");
  synth->add_option("--log-base", sa.log_base, "e or 10");
  synth->add_option("--p", sa.p);
  synth->add_option("--s", sa.s);
  synth->add_option("--sigma-k", sa.sigma_k);
  synth->add_option("--noise", sa.noise, "gaussian or t2");
  synth->add_option("--seed", sa.seed);
  synth->add_flag("--balanced", sa.balanced, "Equal cluster sizes");
  synth->add_flag("--raw", sa.raw, "Write data before column standardization");
  synth->add_option("--out-data", sa.out_data);
  synth->add_option("--out-labels", sa.out_labels);
  synth->add_option("--out-support", sa.out_support);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Compare predicted labels with the truth");
  eval->add_option("--truth", ea.truth)->required();
  eval->add_option("--pred", ea.pred)->required();
  eval->add_option("--true-support", ea.true_support);
  eval->add_option("--est-support", ea.est_support);
  eval->add_option("--out", ea.out, "CSV output");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Run a simulation grid");
  experiment->add_option("--config", xa.config)->required();
  experiment->add_option("--out", xa.out);
  experiment->add_option("--jobs", xa.jobs, "Worker threads (default SCFS_JOBS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidSpec;
  }

  if (cluster->parsed()) return run_guarded([&] { return cmd_cluster(ca); });
  if (synth->parsed()) return run_guarded([&] { return cmd_synth(sa); });
  if (eval->parsed()) return run_guarded([&] { return cmd_eval(ea); });
  return run_guarded([&] { return cmd_experiment(xa); });
}
