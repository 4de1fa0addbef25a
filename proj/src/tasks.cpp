#include "permtopic/tasks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permtopic {

Segmentation Segmentation::from_labels(std::span<const int> labels) {
  if (labels.empty()) throw std::invalid_argument("Segmentation: no units");
  Segmentation seg;
  int run = 1;
  for (std::size_t p = 1; p < labels.size(); ++p) {
    if (labels[p] != labels[p - 1]) {
      seg.lengths.push_back(run);
      run = 0;
    }
    ++run;
  }
  seg.lengths.push_back(run);
  return seg;
}

Segmentation Segmentation::from_boundaries(int num_units, std::span<const int> starts) {
  if (num_units < 1) throw std::invalid_argument("Segmentation: no units");
  Segmentation seg;
  int prev = 0;
  for (int s : starts) {
    if (s <= prev || s >= num_units) throw std::invalid_argument("Segmentation: boundaries must increase within range");
    seg.lengths.push_back(s - prev);
    prev = s;
  }
  seg.lengths.push_back(num_units - prev);
  return seg;
}

int Segmentation::num_units() const { return std::accumulate(lengths.begin(), lengths.end(), 0); }

std::vector<int> Segmentation::boundaries() const {
  std::vector<int> starts;
  int pos = 0;
  for (std::size_t s = 0; s + 1 < lengths.size(); ++s) {
    pos += lengths[s];
    starts.push_back(pos);
  }
  return starts;
}

std::vector<int> Segmentation::unit_segments() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(num_units()));
  for (std::size_t s = 0; s < lengths.size(); ++s) out.insert(out.end(), static_cast<std::size_t>(lengths[s]), static_cast<int>(s));
  return out;
}

Alignment extract_alignment(const PosteriorSample& sample) {
  Alignment out;
  out.labels.reserve(sample.state.documents.size());
  for (const auto& ds : sample.state.documents) out.labels.push_back(ds.z);
  return out;
}

Segmentation extract_segmentation(std::span<const int> z) { return Segmentation::from_labels(z); }

TopicModelEstimate TopicModelEstimate::from_estimates(const MatrixXd& beta, const VectorXd& theta) {
  if (beta.rows() != theta.size()) throw std::invalid_argument("TopicModelEstimate: K mismatch");
  return {beta.array().log().matrix(), theta.array().log().matrix()};
}

TopicModelEstimate TopicModelEstimate::from_sample(const PosteriorSample& sample) {
  return from_estimates(estimate_beta(sample, sample.config.beta0), estimate_theta(sample, sample.config.theta0));
}

VectorXd topic_scores(const WordBag& bag, const TopicModelEstimate& model) {
  VectorXd scores = model.log_theta;
  for (const auto& [w, c] : bag.entries) {
    if (w < 0 || w >= model.log_beta.cols()) throw std::out_of_range("topic_scores: word id out of range");
    scores += static_cast<double>(c) * model.log_beta.col(w);
  }
  return scores;
}

int assign_topic_map(const WordBag& bag, const TopicModelEstimate& model) {
  const VectorXd scores = topic_scores(bag, model);
  int best = 0;
  for (int k = 1; k < scores.size(); ++k) {
    if (scores(k) > scores(best)) best = k;
  }
  return best;
}

int assign_topic_map(const WordBag& bag, const MatrixXd& beta_hat, const VectorXd& theta_hat) {
  return assign_topic_map(bag, TopicModelEstimate::from_estimates(beta_hat, theta_hat));
}

Ordering order_sections(std::span<const WordBag> sections, const TopicModelEstimate& model) {
  Ordering out;
  out.topics.reserve(sections.size());
  for (const auto& bag : sections) {
    out.topics.push_back(assign_topic_map(bag, model));
    out.score_evaluations += model.num_topics();
  }
  out.order.resize(sections.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](int a, int b) {
    return out.topics[static_cast<std::size_t>(a)] < out.topics[static_cast<std::size_t>(b)];
  });
  out.ranks.resize(sections.size());
  for (std::size_t pos = 0; pos < out.order.size(); ++pos) out.ranks[static_cast<std::size_t>(out.order[pos])] = static_cast<int>(pos);
  return out;
}

}  // namespace permtopic
