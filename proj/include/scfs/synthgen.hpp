#pragma once

#include <cstdint>
#include <string>

#include "scfs/matrix_core.hpp"
#include "scfs/random.hpp"

namespace scfs {

enum class Noise { kGaussian, kStudentT2 };

std::string to_string(Noise noise);
Noise parse_noise(const std::string& text);

// Sparse Gaussian mixture: k centers that differ only on the first s of p
// features, with k-th singular value sigma_k.
struct SynthSpec {
  Eigen::Index k = 4;
  Eigen::Index n = 100;
  Eigen::Index p = 100;
  Eigen::Index s = 100;
  double sigma_k = 4.0;
  Noise noise = Noise::kGaussian;
  std::uint64_t seed = 0;
  bool balanced = false;    // round-robin labels instead of i.i.d. uniform
  bool zero_noise = false;  // test hook: W = 0

  // Throws DomainError unless 1 <= k <= s <= p, k <= n and sigma_k > 0.
  void validate() const;
};

// Sample size for a target n / log(p) ratio, rounded up.
enum class LogBase { kNatural, kTen };
Eigen::Index n_for_ratio(double ratio, Eigen::Index p,
                         LogBase base = LogBase::kNatural);

// B = [sigma_k * Bt, 0] where Bt holds the first k rows of the left singular
// matrix of an s x s standard Gaussian matrix.
CenterMatrix generate_centers(const SynthSpec& spec, Rng& rng);

// i.i.d. uniform labels, redrawn until every cluster is non-empty (at most
// 1000 attempts).
LabelVector generate_labels(const SynthSpec& spec, Rng& rng);

// Standard Student t with two degrees of freedom: Z / sqrt(chi2_2 / 2).
double sample_t2(Rng& rng);

struct SynthData {
  DataMatrix data;   // standardized Y = Z B + W
  MatrixXd raw;      // Z B + W before standardization
  LabelVector labels;
  IndexSet support;  // {0, ..., s-1}
  CenterMatrix centers;
};

// Centers, labels and noise each come from their own stream split off `rng`.
SynthData generate_data(const SynthSpec& spec, const Rng& rng);
inline SynthData generate_data(const SynthSpec& spec) {
  return generate_data(spec, Rng(spec.seed));
}

// Keep each label with probability 1 - eta, otherwise replace it with one of
// the other k - 1 values chosen uniformly.
LabelVector corrupt_labels(const LabelVector& truth, double eta, int k, Rng& rng);

}  // namespace scfs
