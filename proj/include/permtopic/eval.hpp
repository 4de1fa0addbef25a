#pragma once

// Task metrics, the paired randomization test and the synthetic generator.

#include <cmath>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/gmm.hpp"
#include "permtopic/tasks.hpp"
#include "permtopic/types.hpp"

namespace permtopic {

struct AlignmentScores {
  double recall = 0.0;
  double precision = 0.0;
  double f = 0.0;
};

/// Cluster-vs-reference scores. Recall credits each reference label with its
/// largest overlap with one cluster; precision credits each cluster with its
/// largest overlap with one reference label.
AlignmentScores alignment_scores(const Alignment& hyp, const std::vector<std::vector<std::string>>& reference);

/// Reference labels from headings; throws if any paragraph lacks one.
std::vector<std::vector<std::string>> heading_labels(const Headings& headings);

/// Reference segmentation: maximal runs of identical headings.
Segmentation reference_segmentation(std::span<const std::string> headings);

/// Half the mean reference segment length, rounded down, at least 2.
int default_window(const Segmentation& ref);

/// Fraction of unit pairs (i, i + window) on which hypothesis and reference
/// disagree about lying in the same segment.
double pk(const Segmentation& hyp, const Segmentation& ref, int window);

/// Fraction of windows whose boundary counts differ.
double window_diff(const Segmentation& hyp, const Segmentation& ref, int window);

/// 1 - 2 d / C(N, 2) for two orderings of the same N items.
double kendall_tau_metric(std::span<const int> predicted, std::span<const int> reference);

struct SignificanceResult {
  double observed = 0.0;
  double p_value = 1.0;
  int shuffles = 0;
};

/// Approximate randomization over paired per-document outputs: each shuffle
/// swaps the two systems' outputs for each document with probability 1/2.
/// p = (c + 1) / (shuffles + 1), c counting shuffles at least as extreme.
template <typename Output>
SignificanceResult approx_randomization(std::span<const Output> a, std::span<const Output> b,
                                        const std::function<double(std::span<const Output>)>& metric,
                                        int shuffles, Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("approx_randomization: unpaired inputs");
  if (shuffles < 1) throw std::invalid_argument("approx_randomization: need at least one shuffle");
  SignificanceResult result;
  result.shuffles = shuffles;
  result.observed = std::abs(metric(a) - metric(b));
  std::vector<Output> x(a.begin(), a.end());
  std::vector<Output> y(b.begin(), b.end());
  std::bernoulli_distribution coin(0.5);
  int extreme = 0;
  for (int s = 0; s < shuffles; ++s) {
    for (std::size_t d = 0; d < a.size(); ++d) {
      if (coin(rng)) {
        x[d] = b[d];
        y[d] = a[d];
      } else {
        x[d] = a[d];
        y[d] = b[d];
      }
    }
    const double diff = std::abs(metric(std::span<const Output>(x)) - metric(std::span<const Output>(y)));
    // Relative slack so ties with the observed statistic count as extreme.
    if (diff >= result.observed - 1e-12 * std::max(1.0, result.observed)) ++extreme;
  }
  result.p_value = (extreme + 1.0) / (shuffles + 1.0);
  return result;
}

struct SynthConfig {
  int num_topics = 5;
  int num_documents = 50;
  int min_paragraphs = 8;
  int max_paragraphs = 12;
  int min_words = 30;
  int max_words = 60;
  int vocab_size = 200;
  double theta0 = 1.0;
  double beta0 = 0.01;
  double rho0 = 2.0;
  double nu0 = 5.0;
  std::uint64_t seed = 7;

  void validate() const;
};

/// Ground-truth model parameters shared by all generated documents.
struct SynthModel {
  MatrixXd beta;   // K x W
  VectorXd theta;  // K
  VectorXd rho;    // K-1
};

struct SyntheticCorpus {
  Corpus corpus;
  SynthModel model;
  std::vector<std::vector<int>> draws;
  std::vector<InversionVector> inversions;
  std::vector<std::vector<int>> z;

  /// Headings "topic<k>" from the true assignments.
  Headings truth_headings() const;
};

/// Samples the model parameters then `config.num_documents` documents.
SyntheticCorpus generate_synthetic(const SynthConfig& config, Rng& rng);

/// Samples the global parameters only.
SynthModel sample_synth_model(const SynthConfig& config, Rng& rng);

/// Samples `count` further documents from an existing model. With
/// `canonical_order` the inversions are fixed at zero. Word ids index the
/// vocabulary "w0".."w{W-1}".
SyntheticCorpus sample_documents(const SynthConfig& config, const SynthModel& model, int count,
                                 bool canonical_order, Rng& rng, const std::string& id_prefix = "doc");

/// Writes per-chain values and their mean for each metric as an aligned table.
struct MetricTable {
  std::string title;
  std::vector<std::string> metrics;
  std::vector<std::vector<double>> values;  // [metric][chain]

  void add(const std::string& metric, std::vector<double> per_chain);
  void write(std::ostream& out) const;
};

}  // namespace permtopic
