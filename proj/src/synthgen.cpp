#include "scfs/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scfs/error.hpp"

namespace scfs {

std::string to_string(Noise noise) {
  return noise == Noise::kGaussian ? "gaussian" : "t2";
}

Noise parse_noise(const std::string& text) {
  if (text == "gaussian") return Noise::kGaussian;
  if (text == "t2") return Noise::kStudentT2;
  throw DomainError("unknown noise '" + text + "' (expected gaussian or t2)");
}

void SynthSpec::validate() const {
  if (k < 1) throw DomainError("k must be at least 1");
  if (n < 1) throw DomainError("n must be at least 1");
  if (p < 1) throw DomainError("p must be at least 1");
  if (s < 1 || s > p) throw DomainError("s must lie in [1, p]");
  if (k > s) throw DomainError("k must not exceed s");
  if (k > n) throw DomainError("k must not exceed n");
  if (!(sigma_k > 0.0) || !std::isfinite(sigma_k))
    throw DomainError("sigma_k must be positive");
}

Eigen::Index n_for_ratio(double ratio, Eigen::Index p, LogBase base) {
  const double lp = base == LogBase::kNatural ? std::log(static_cast<double>(p))
                                              : std::log10(static_cast<double>(p));
  return static_cast<Eigen::Index>(std::ceil(ratio * lp - 1e-9));
}

CenterMatrix generate_centers(const SynthSpec& spec, Rng& rng) {
  spec.validate();
  std::normal_distribution<double> normal;
  MatrixXd g(spec.s, spec.s);
  for (Eigen::Index j = 0; j < spec.s; ++j)
    for (Eigen::Index i = 0; i < spec.s; ++i) g(i, j) = normal(rng.engine());
  Eigen::BDCSVD<MatrixXd> svd(g, Eigen::ComputeFullU);
  CenterMatrix b = CenterMatrix::Zero(spec.k, spec.p);
  b.leftCols(spec.s) = spec.sigma_k * svd.matrixU().topRows(spec.k);
  return b;
}

LabelVector generate_labels(const SynthSpec& spec, Rng& rng) {
  const auto n = static_cast<std::size_t>(spec.n);
  const int k = static_cast<int>(spec.k);
  LabelVector labels(n);
  if (spec.balanced) {
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    std::shuffle(labels.begin(), labels.end(), rng.engine());
    return labels;
  }
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    int distinct = 0;
    for (auto& l : labels) {
      l = pick(rng.engine());
      if (!seen[static_cast<std::size_t>(l)]) {
        seen[static_cast<std::size_t>(l)] = true;
        ++distinct;
      }
    }
    if (distinct == k) return labels;
  }
  throw GenerationError("generate_labels: every cluster non-empty not reached in 1000 draws");
}

double sample_t2(Rng& rng) {
  std::normal_distribution<double> normal;
  std::chi_squared_distribution<double> chi2(2.0);
  const double z = normal(rng.engine());
  return z / std::sqrt(chi2(rng.engine()) / 2.0);
}

SynthData generate_data(const SynthSpec& spec, const Rng& rng) {
  spec.validate();
  Rng center_rng = rng.split(1);
  Rng label_rng = rng.split(2);
  Rng noise_rng = rng.split(3);

  SynthData out;
  out.centers = generate_centers(spec, center_rng);
  out.labels = generate_labels(spec, label_rng);
  out.support.resize(static_cast<std::size_t>(spec.s));
  for (Eigen::Index j = 0; j < spec.s; ++j) out.support[static_cast<std::size_t>(j)] = j;

  out.raw.resize(spec.n, spec.p);
  if (spec.zero_noise) {
    out.raw.setZero();
  } else if (spec.noise == Noise::kGaussian) {
    std::normal_distribution<double> normal;
    for (Eigen::Index j = 0; j < spec.p; ++j)
      for (Eigen::Index i = 0; i < spec.n; ++i) out.raw(i, j) = normal(noise_rng.engine());
  } else {
    for (Eigen::Index j = 0; j < spec.p; ++j)
      for (Eigen::Index i = 0; i < spec.n; ++i) out.raw(i, j) = sample_t2(noise_rng);
  }
  for (Eigen::Index i = 0; i < spec.n; ++i)
    out.raw.row(i).leftCols(spec.s) +=
        out.centers.row(out.labels[static_cast<std::size_t>(i)]).leftCols(spec.s);

  out.data = spec.n >= 2 ? standardize(DataMatrix(out.raw)) : DataMatrix(out.raw);
  return out;
}

LabelVector corrupt_labels(const LabelVector& truth, double eta, int k, Rng& rng) {
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("corrupt_labels: eta must lie in [0, 1)");
  if (k < 1) throw DomainError("corrupt_labels: k must be at least 1");
  LabelVector out = truth;
  if (k == 1) return out;
  std::uniform_int_distribution<int> other(0, k - 2);
  for (auto& l : out) {
    if (rng.uniform() < eta) {
      const int r = other(rng.engine());
      l = r >= l ? r + 1 : r;
    }
  }
  return out;
}

}  // namespace scfs
