#pragma once

// Alignment, segmentation and ordering outputs derived from a posterior sample.

#include <cstdint>
#include <span>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/sampler.hpp"
#include "permtopic/types.hpp"

namespace permtopic {

/// Cluster label (topic) of every paragraph, per document.
struct Alignment {
  std::vector<std::vector<int>> labels;
};

/// Segment lengths of one document, first to last.
struct Segmentation {
  std::vector<int> lengths;

  static Segmentation from_labels(std::span<const int> labels);
  /// `starts` are the 0-based indices where a new segment begins, excluding 0.
  static Segmentation from_boundaries(int num_units, std::span<const int> starts);

  int num_units() const;
  int num_segments() const { return static_cast<int>(lengths.size()); }
  std::vector<int> boundaries() const;
  /// Segment index of every unit.
  std::vector<int> unit_segments() const;

  bool operator==(const Segmentation&) const = default;
};

Alignment extract_alignment(const PosteriorSample& sample);
Segmentation extract_segmentation(std::span<const int> z);

/// Log-space point estimates used to score unseen text.
struct TopicModelEstimate {
  MatrixXd log_beta;   // K x W
  VectorXd log_theta;  // K

  static TopicModelEstimate from_sample(const PosteriorSample& sample);
  static TopicModelEstimate from_estimates(const MatrixXd& beta, const VectorXd& theta);
  int num_topics() const { return static_cast<int>(log_theta.size()); }
};

/// log P(bag | topic k) + log theta_k for every k.
VectorXd topic_scores(const WordBag& bag, const TopicModelEstimate& model);

/// Most probable topic of a bag; ties go to the lower topic index.
int assign_topic_map(const WordBag& bag, const TopicModelEstimate& model);
int assign_topic_map(const WordBag& bag, const MatrixXd& beta_hat, const VectorXd& theta_hat);

struct Ordering {
  std::vector<int> order;   // input indices, first to last
  std::vector<int> topics;  // MAP topic of each input section
  std::vector<int> ranks;   // predicted position of each input section
  std::int64_t score_evaluations = 0;
};

/// Stable ascending sort of sections by MAP topic; ties keep input order.
Ordering order_sections(std::span<const WordBag> sections, const TopicModelEstimate& model);

}  // namespace permtopic
