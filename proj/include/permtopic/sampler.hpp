#pragma once

// Collapsed Gibbs sampler over topic bags, inversion vectors and dispersions.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/dcm.hpp"
#include "permtopic/gmm.hpp"
#include "permtopic/types.hpp"

namespace permtopic {

enum class Variant {
  Full,         // learned GMM dispersions
  Constrained,  // every inversion pinned at zero
  Uniform,      // dispersions pinned at zero: all orderings equally likely
};

std::string to_string(Variant variant);
Variant parse_variant(const std::string& name);

struct SamplerConfig {
  int num_topics = 10;
  int iterations = 10000;
  int chains = 5;
  double theta0 = 0.1;
  double beta0 = 0.1;
  double rho0 = 1.0;
  // nu0 is this multiple of the number of documents.
  double nu0_scale = 0.1;
  Variant variant = Variant::Full;
  std::uint64_t seed = 1;
  // Label-exchange moves after each sweep's document updates.
  bool relabel = true;

  double nu0(int num_documents) const { return nu0_scale * static_cast<double>(num_documents); }
  void validate() const;
};

struct DocumentState {
  std::vector<int> draws;  // t_d: one topic per draw, N_d draws
  InversionVector inversions;
  std::vector<int> z;  // paragraph topics

  bool operator==(const DocumentState&) const = default;
};

struct ChainState {
  std::vector<DocumentState> documents;
  VectorXd rho;                 // length K-1
  TopicWordCounts word_topic;   // N_beta(k, w)
  VectorXi topic_draws;         // N(t, k) over the whole corpus, equals paragraph-topic counts

  bool operator==(const ChainState& o) const {
    return documents == o.documents && rho == o.rho && word_topic == o.word_topic && topic_draws == o.topic_draws;
  }
};

struct PosteriorSample {
  SamplerConfig config;
  int chain = 0;
  int iteration = 0;
  ChainState state;
};

/// Lays the draws out in the order given by `pi`; each topic forms one block.
std::vector<int> compute_z(std::span<const int> draws, const Permutation& pi);

/// Rebuilds count tables from (draws, z) and checks every invariant of the
/// state. Returns an empty string when consistent, else a description.
std::string check_consistency(const Corpus& corpus, const ChainState& state, const SamplerConfig& config);

/// Seeds the engine for chain `chain` of a run seeded with `seed`.
Rng make_chain_rng(std::uint64_t seed, int chain);

class GibbsSampler {
 public:
  /// Initial state: uniform topic draws, zero inversions, rho = rho0
  /// (zero under the Uniform variant).
  GibbsSampler(const Corpus& corpus, const SamplerConfig& config, Rng rng);

  const ChainState& state() const { return state_; }
  const SamplerConfig& config() const { return config_; }
  const GmmPrior& prior() const { return prior_; }
  int iteration() const { return iteration_; }

  /// Removes document d from the word-topic table and resets the span cache;
  /// required before the per-document operations below.
  void begin_document(int d);
  void end_document();
  int active_document() const { return active_; }

  /// Normalised conditional over the K values of draw i of the active document.
  VectorXd topic_draw_conditional(int i);
  void resample_topic_draw(int i);

  /// Normalised conditional over the K-j values of inversion j.
  VectorXd inversion_conditional(int j);
  void resample_inversion(int j);

  /// Metropolis moves that exchange the labels of two topics in every
  /// document at once, once for each pair (Full variant only). Words and topic
  /// draws are unchanged up to naming, so only the ordering prior enters the
  /// acceptance ratio. Returns the number of accepted exchanges.
  int relabel_topics();

  /// Slice-samples each rho_j given all inversion counts (Full variant only).
  void resample_dispersions();

  /// One full sweep: every document's draws then inversions, then label
  /// exchanges, then rho.
  void sweep();

  /// log P(w, t, v, rho) up to constants independent of the state.
  double joint_log_prob() const;

  PosteriorSample sample(int chain = 0) const;

  const SpanCache& cache() const { return cache_; }

 private:
  void refresh_z(DocumentState& doc) const;
  int draw_categorical(const VectorXd& probs);

  const Corpus& corpus_;
  SamplerConfig config_;
  GmmPrior prior_;
  Rng rng_;
  ChainState state_;
  std::int64_t total_draws_ = 0;
  SpanCache cache_;
  int active_ = -1;
  int iteration_ = 0;
};

using SweepObserver = std::function<void(const GibbsSampler&)>;

/// Runs `config.iterations` sweeps and returns the final state. The observer,
/// when set, is called after every sweep.
PosteriorSample run_chain(const Corpus& corpus, const SamplerConfig& config, Rng rng, int chain = 0,
                          const SweepObserver& observer = {}, std::vector<double>* trace = nullptr);

/// Runs `config.chains` independent chains on up to `workers` threads.
std::vector<PosteriorSample> run_chains(const Corpus& corpus, const SamplerConfig& config, int workers);

/// Smoothed per-topic word distributions, K x W; rows sum to one.
MatrixXd estimate_beta(const PosteriorSample& sample, double beta0);
MatrixXd estimate_beta(const TopicWordCounts& counts, double beta0);

/// Smoothed topic prior from paragraph-topic counts.
VectorXd estimate_theta(const PosteriorSample& sample, double theta0);
VectorXd estimate_theta(const VectorXi& paragraph_topic_counts, double theta0);

}  // namespace permtopic
