#include "scfs/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "scfs/csv.hpp"
#include "scfs/error.hpp"
#include "scfs/feature_select.hpp"
#include "scfs/metrics.hpp"
#include "scfs/pipeline.hpp"
#include "scfs/speclloyd.hpp"
#include "scfs/spectral.hpp"

namespace scfs {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kFeatureSelection: return "feature_selection";
    case ExperimentKind::kMethodComparison: return "method_comparison";
    case ExperimentKind::kSpectralSweep: return "spectral_sweep";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (k < 2) throw ConfigError("k must be at least 2");
  if (p < 1 || s < 1 || s > p) throw ConfigError("need 1 <= s <= p");
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (sigma_k.empty()) throw ConfigError("sigma_k needs at least one value");
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("tau must lie in (0, 1)");
  if (top_m && *top_m < 1) throw ConfigError("top_m must be at least 1");
  if (kmeans.restarts < 1 || kmeans.max_iter < 1)
    throw ConfigError("kmeans_restarts and kmeans_max_iter must be at least 1");
  switch (kind) {
    case ExperimentKind::kFeatureSelection:
      if (n_over_logp.empty()) throw ConfigError("feature_selection needs n_over_logp");
      if (eta.empty()) throw ConfigError("feature_selection needs eta");
      for (double e : eta)
        if (!(e >= 0.0 && e < 1.0)) throw ConfigError("eta values must lie in [0, 1)");
      break;
    case ExperimentKind::kMethodComparison:
      if (n_over_logp.empty()) throw ConfigError("method_comparison needs n_over_logp");
      break;
    case ExperimentKind::kSpectralSweep:
      if (sweep != "p" && sweep != "n" && sweep != "sigma_k")
        throw ConfigError("sweep must be one of p, n, sigma_k");
      if (sweep_values.empty()) throw ConfigError("spectral_sweep needs sweep_values");
      break;
  }
  for (double r : n_over_logp)
    if (!(r > 0.0)) throw ConfigError("n_over_logp values must be positive");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& value, long line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size())
      throw ConfigError("line " + std::to_string(line) + ": not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

double parse_scalar(const std::string& value, long line) {
  const auto list = parse_list(value, line);
  if (list.size() != 1)
    throw ConfigError("line " + std::to_string(line) + ": expected a single value");
  return list.front();
}

long parse_count(const std::string& value, long line) {
  const double v = parse_scalar(value, line);
  if (v != std::floor(v) || v < 0)
    throw ConfigError("line " + std::to_string(line) + ": expected a nonnegative integer");
  return static_cast<long>(v);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

ExperimentResult run_feature_selection(const ExperimentConfig& cfg, int jobs) {
  struct Cell {
    double sigma_k;
    double ratio;
    Eigen::Index n;
  };
  std::vector<Cell> cells;
  for (double sk : cfg.sigma_k)
    for (double r : cfg.n_over_logp) cells.push_back({sk, r, n_for_ratio(r, cfg.p, cfg.log_base)});

  const auto reps = static_cast<std::size_t>(cfg.repetitions);
  const std::size_t n_eta = cfg.eta.size();
  // f1[(cell * reps + rep) * n_eta + e]
  std::vector<SelectionScore> scores(cells.size() * reps * n_eta);
  parallel_for(cells.size() * reps, jobs, [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    const Rng rep_rng(derive_seed(cfg.seed, {c, r}));
    SynthSpec spec;
    spec.k = cfg.k;
    spec.n = cells[c].n;
    spec.p = cfg.p;
    spec.s = cfg.s;
    spec.sigma_k = cells[c].sigma_k;
    spec.noise = cfg.noise;
    const SynthData data = generate_data(spec, rep_rng);
    for (std::size_t e = 0; e < n_eta; ++e) {
      Rng corrupt_rng = rep_rng.split(100 + e);
      const LabelVector guess =
          corrupt_labels(data.labels, cfg.eta[e], static_cast<int>(cfg.k), corrupt_rng);
      const FeatureScores fs = score_features(data.data, guess);
      IndexSet selected;
      if (cfg.top_m) {
        selected = select_top_m(fs, std::min(*cfg.top_m, cfg.p));
      } else {
        try {
          selected = select_threshold(fs, cfg.tau);
        } catch (const SelectionEmptyError&) {
        }
      }
      scores[task * n_eta + e] = selection_f1(data.support, selected);
    }
  });

  ExperimentResult out;
  out.table.columns = {"sigma_k", "n_over_logp", "n", "eta", "mean_f1", "sd_f1",
                       "mean_precision", "mean_recall"};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t e = 0; e < n_eta; ++e) {
      std::vector<double> f1, prec, rec;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto& s = scores[(c * reps + r) * n_eta + e];
        f1.push_back(s.f1);
        prec.push_back(s.precision);
        rec.push_back(s.recall);
      }
      out.table.rows.push_back({cells[c].sigma_k, cells[c].ratio,
                                static_cast<double>(cells[c].n), cfg.eta[e], mean_of(f1),
                                sd_of(f1), mean_of(prec), mean_of(rec)});
    }
  }
  return out;
}

ExperimentResult run_method_comparison(const ExperimentConfig& cfg, int jobs) {
  struct Cell {
    double sigma_k;
    double ratio;
    Eigen::Index n;
  };
  std::vector<Cell> cells;
  for (double sk : cfg.sigma_k)
    for (double r : cfg.n_over_logp) cells.push_back({sk, r, n_for_ratio(r, cfg.p, cfg.log_base)});

  const auto reps = static_cast<std::size_t>(cfg.repetitions);
  constexpr std::size_t kMethods = 3;  // specLloyd, SC-FS1, SC-FS2
  std::vector<double> errors(cells.size() * reps * kMethods);
  std::vector<double> fallbacks(cells.size() * reps);
  parallel_for(cells.size() * reps, jobs, [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    const std::uint64_t rep_seed = derive_seed(cfg.seed, {c, r});
    const Rng rep_rng(rep_seed);
    SynthSpec spec;
    spec.k = cfg.k;
    spec.n = cells[c].n;
    spec.p = cfg.p;
    spec.s = cfg.s;
    spec.sigma_k = cells[c].sigma_k;
    spec.noise = cfg.noise;
    const SynthData data = generate_data(spec, rep_rng);

    IndexSet all(static_cast<std::size_t>(cfg.p));
    for (Eigen::Index j = 0; j < cfg.p; ++j) all[static_cast<std::size_t>(j)] = j;
    const SpecLloydResult baseline =
        spec_lloyd(data.data, cfg.k, all, default_lloyd_rounds(spec.n), cfg.kmeans,
                   rep_rng.split(10));

    PipelineConfig pc;
    pc.k = static_cast<int>(cfg.k);
    pc.tau = cfg.tau;
    pc.top_m = cfg.top_m;
    pc.kmeans = cfg.kmeans;
    pc.seed = derive_seed(rep_seed, {20});
    pc.variant = Variant::kScfs2;
    const PipelineReport report = run_scfs(data.data, pc);

    errors[task * kMethods + 0] = misclustering_rate(data.labels, baseline.labels);
    errors[task * kMethods + 1] = misclustering_rate(data.labels, report.stage3_spectral_labels);
    errors[task * kMethods + 2] = misclustering_rate(data.labels, report.labels);
    fallbacks[task] = report.diagnostics.selection_fallback ? 1.0 : 0.0;
  });

  ExperimentResult out;
  out.table.columns = {"sigma_k",   "n_over_logp", "n",          "speclloyd_mean",
                       "speclloyd_sd", "scfs1_mean", "scfs1_sd", "scfs2_mean",
                       "scfs2_sd",  "fallback_rate"};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> row{cells[c].sigma_k, cells[c].ratio, static_cast<double>(cells[c].n)};
    for (std::size_t m = 0; m < kMethods; ++m) {
      std::vector<double> v;
      for (std::size_t r = 0; r < reps; ++r) v.push_back(errors[(c * reps + r) * kMethods + m]);
      row.push_back(mean_of(v));
      row.push_back(sd_of(v));
    }
    std::vector<double> fb(fallbacks.begin() + static_cast<std::ptrdiff_t>(c * reps),
                           fallbacks.begin() + static_cast<std::ptrdiff_t>((c + 1) * reps));
    row.push_back(mean_of(fb));
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

ExperimentResult run_spectral_sweep(const ExperimentConfig& cfg, int jobs) {
  const auto reps = static_cast<std::size_t>(cfg.repetitions);
  const std::size_t cells = cfg.sweep_values.size();
  std::vector<double> errors(cells * reps);
  parallel_for(cells * reps, jobs, [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    const Rng rep_rng(derive_seed(cfg.seed, {c, r}));
    SynthSpec spec;
    spec.k = cfg.k;
    spec.n = cfg.n;
    spec.p = cfg.p;
    spec.s = cfg.s;
    spec.sigma_k = cfg.sigma_k.front();
    spec.noise = cfg.noise;
    const double v = cfg.sweep_values[c];
    if (cfg.sweep == "p") spec.p = static_cast<Eigen::Index>(v);
    else if (cfg.sweep == "n") spec.n = static_cast<Eigen::Index>(v);
    else spec.sigma_k = v;
    spec.s = std::min(spec.s, spec.p);
    const SynthData data = generate_data(spec, rep_rng);
    const LabelVector labels = spectral_cluster(data.data, cfg.k, cfg.kmeans, rep_rng.split(10));
    errors[task] = misclustering_rate(data.labels, labels);
  });

  ExperimentResult out;
  out.table.columns = {cfg.sweep, "mean_error", "sd_error"};
  std::vector<double> means;
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<double> v(errors.begin() + static_cast<std::ptrdiff_t>(c * reps),
                          errors.begin() + static_cast<std::ptrdiff_t>((c + 1) * reps));
    means.push_back(mean_of(v));
    out.table.rows.push_back({cfg.sweep_values[c], means.back(), sd_of(v)});
  }
  out.slope = fitted_slope(cfg.sweep_values, means);
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::map<std::string, long> seen;
  std::string raw;
  long line = 0;
  bool have_kind = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (seen.count(key))
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    seen[key] = line;

    if (key == "kind") {
      if (value == "feature_selection") cfg.kind = ExperimentKind::kFeatureSelection;
      else if (value == "method_comparison") cfg.kind = ExperimentKind::kMethodComparison;
      else if (value == "spectral_sweep") cfg.kind = ExperimentKind::kSpectralSweep;
      else throw ConfigError("line " + std::to_string(line) + ": unknown kind '" + value + "'");
      have_kind = true;
    } else if (key == "k") {
      cfg.k = parse_count(value, line);
    } else if (key == "p") {
      cfg.p = parse_count(value, line);
    } else if (key == "s") {
      cfg.s = parse_count(value, line);
    } else if (key == "n") {
      cfg.n = parse_count(value, line);
    } else if (key == "sigma_k") {
      cfg.sigma_k = parse_list(value, line);
    } else if (key == "n_over_logp") {
      cfg.n_over_logp = parse_list(value, line);
    } else if (key == "eta") {
      cfg.eta = parse_list(value, line);
    } else if (key == "sweep") {
      cfg.sweep = value;
    } else if (key == "sweep_values") {
      cfg.sweep_values = parse_list(value, line);
    } else if (key == "noise") {
      try {
        cfg.noise = parse_noise(value);
      } catch (const DomainError& e) {
        throw ConfigError("line " + std::to_string(line) + ": " + e.what());
      }
    } else if (key == "log_base") {
      if (value == "e") cfg.log_base = LogBase::kNatural;
      else if (value == "10") cfg.log_base = LogBase::kTen;
      else throw ConfigError("line " + std::to_string(line) + ": log_base must be e or 10");
    } else if (key == "repetitions") {
      cfg.repetitions = static_cast<int>(parse_count(value, line));
    } else if (key == "seed") {
      const std::string v = trim(value);
      char* end = nullptr;
      cfg.seed = std::strtoull(v.c_str(), &end, 10);
      if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("line " + std::to_string(line) + ": seed must be an unsigned integer");
    } else if (key == "tau") {
      cfg.tau = parse_scalar(value, line);
    } else if (key == "top_m") {
      cfg.top_m = parse_count(value, line);
    } else if (key == "kmeans_restarts") {
      cfg.kmeans.restarts = static_cast<int>(parse_count(value, line));
    } else if (key == "kmeans_max_iter") {
      cfg.kmeans.max_iter = static_cast<int>(parse_count(value, line));
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ConfigError("missing required key 'kind'");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_experiment_config(in);
}

double ResultTable::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == column) return rows.at(row).at(c);
  throw DimensionError("no column named '" + column + "'");
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCFS_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& task) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentKind::kFeatureSelection: return run_feature_selection(cfg, jobs);
    case ExperimentKind::kMethodComparison: return run_method_comparison(cfg, jobs);
    case ExperimentKind::kSpectralSweep: return run_spectral_sweep(cfg, jobs);
  }
  throw ConfigError("unknown experiment kind");
}

void write_table_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << csv::format_double(row[c]);
    out << '\n';
  }
}

void write_table_csv(const std::string& path, const ResultTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_table_csv(out, table);
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DimensionError("fitted_slope: need two or more paired points");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DimensionError("fitted_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace scfs
