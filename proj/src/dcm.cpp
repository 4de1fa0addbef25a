#include "permtopic/dcm.hpp"

#include <algorithm>

namespace permtopic {

TopicWordCounts::TopicWordCounts(int num_topics, int vocab_size, double beta0)
    : counts_(MatrixXi::Zero(num_topics, vocab_size)), totals_(VectorXi::Zero(num_topics)), beta0_(beta0) {
  if (num_topics < 1 || vocab_size < 1) throw std::invalid_argument("TopicWordCounts: empty table");
  if (!(beta0 > 0.0)) throw std::domain_error("TopicWordCounts: beta0 must be positive");
}

void TopicWordCounts::update(int k, const WordBag& bag, std::int64_t sign) {
  if (k < 0 || k >= num_topics()) throw std::out_of_range("TopicWordCounts: topic out of range");
  for (const auto& [w, c] : bag.entries) {
    counts_(k, w) += sign * c;
    if (counts_(k, w) < 0) throw std::logic_error("TopicWordCounts: negative count");
  }
  totals_(k) += sign * bag.total;
}

void TopicWordCounts::swap_topics(int a, int b) {
  if (a < 0 || b < 0 || a >= num_topics() || b >= num_topics()) throw std::out_of_range("TopicWordCounts: topic out of range");
  counts_.row(a).swap(counts_.row(b));
  std::swap(totals_(a), totals_(b));
}

double TopicWordCounts::log_posterior(const WordBag& x, int k) const {
  if (x.empty()) return 0.0;
  const double w_beta = beta0_ * static_cast<double>(vocab_size());
  double total = log_gamma(w_beta + static_cast<double>(totals_(k))) -
                 log_gamma(w_beta + static_cast<double>(totals_(k) + x.total));
  for (const auto& [w, c] : x.entries) {
    const double a = beta0_ + static_cast<double>(counts_(k, w));
    total += log_gamma(a + static_cast<double>(c)) - log_gamma(a);
  }
  return total;
}

double doc_log_prob(const Document& doc, std::span<const int> z, const TopicWordCounts& external) {
  if (static_cast<int>(z.size()) != doc.size()) throw std::invalid_argument("doc_log_prob: z length mismatch");
  const int num_topics = external.num_topics();
  std::vector<std::vector<std::int64_t>> pooled(static_cast<std::size_t>(num_topics));
  for (int p = 0; p < doc.size(); ++p) {
    const int k = z[static_cast<std::size_t>(p)];
    if (k < 0 || k >= num_topics) throw std::out_of_range("doc_log_prob: topic index out of range");
    auto& dense = pooled[static_cast<std::size_t>(k)];
    if (dense.empty()) dense.assign(static_cast<std::size_t>(external.vocab_size()), 0);
    for (const auto& [w, c] : doc.paragraphs[static_cast<std::size_t>(p)].words.entries) {
      dense[static_cast<std::size_t>(w)] += c;
    }
  }
  double total = 0.0;
  for (int k = 0; k < num_topics; ++k) {
    const auto& dense = pooled[static_cast<std::size_t>(k)];
    if (dense.empty()) continue;
    total += external.log_posterior(WordBag::from_counts(dense), k);
  }
  return total;
}

void SpanCache::reset(const Document& doc, const TopicWordCounts& external) {
  doc_ = &doc;
  external_ = &external;
  num_paragraphs_ = doc.size();
  num_topics_ = external.num_topics();
  const std::size_t cells = static_cast<std::size_t>(num_paragraphs_) * static_cast<std::size_t>(num_paragraphs_) *
                            static_cast<std::size_t>(num_topics_);
  if (values_.size() < cells) {
    values_.resize(cells);
    stamps_.assign(cells, 0);
    generation_ = 0;
  }
  if (++generation_ == 0) {
    std::fill(stamps_.begin(), stamps_.end(), 0);
    generation_ = 1;
  }
  scratch_.assign(static_cast<std::size_t>(external.vocab_size()), 0);
  trace_.clear();
}

double SpanCache::span_log_prob(int first, int last, int topic) {
  if (doc_ == nullptr) throw std::logic_error("SpanCache: used before reset");
  if (first < 0 || first > last || last >= num_paragraphs_ || topic < 0 || topic >= num_topics_) {
    throw std::out_of_range("SpanCache: span index out of range");
  }
  ++lookups_;
  if (tracing_) trace_.push_back({first, last, topic});
  const std::size_t key = index(first, last, topic);
  if (stamps_[key] == generation_) {
    ++hits_;
    return values_[key];
  }

  const TopicWordCounts& ext = *external_;
  const double beta = ext.beta0();
  const double w_beta = beta * static_cast<double>(ext.vocab_size());
  std::int64_t span_total = 0;
  double value = 0.0;
  for (int l = first; l <= last; ++l) {
    const WordBag& bag = doc_->paragraphs[static_cast<std::size_t>(l)].words;
    const std::size_t cell = index(first, l, topic);
    if (stamps_[cell] == generation_) {
      value = values_[cell];
    } else {
      // Chain rule: P(first..l) = P(first..l-1) * P(paragraph l | first..l-1).
      ++paragraph_evaluations_;
      double cond = -log_rising(w_beta + static_cast<double>(ext.total(topic) + span_total), bag.total);
      for (const auto& [w, c] : bag.entries) {
        const double a = beta + static_cast<double>(ext.count(topic, w) + scratch_[static_cast<std::size_t>(w)]);
        cond += log_rising(a, c);
      }
      value += cond;
      values_[cell] = value;
      stamps_[cell] = generation_;
    }
    for (const auto& [w, c] : bag.entries) scratch_[static_cast<std::size_t>(w)] += c;
    span_total += bag.total;
  }
  for (int l = first; l <= last; ++l) {
    for (const auto& [w, c] : doc_->paragraphs[static_cast<std::size_t>(l)].words.entries) {
      scratch_[static_cast<std::size_t>(w)] -= c;
    }
  }
  return value;
}

double SpanCache::doc_log_prob(std::span<const int> z) {
  if (static_cast<int>(z.size()) != num_paragraphs_) throw std::invalid_argument("SpanCache: z length mismatch");
  double total = 0.0;
  std::vector<bool> seen(static_cast<std::size_t>(num_topics_), false);
  int start = 0;
  for (int p = 1; p <= num_paragraphs_; ++p) {
    if (p == num_paragraphs_ || z[static_cast<std::size_t>(p)] != z[static_cast<std::size_t>(start)]) {
      const int topic = z[static_cast<std::size_t>(start)];
      if (topic < 0 || topic >= num_topics_) throw std::out_of_range("SpanCache: topic out of range");
      if (seen[static_cast<std::size_t>(topic)]) {
        throw std::invalid_argument("SpanCache: topic assignment is not contiguous");
      }
      seen[static_cast<std::size_t>(topic)] = true;
      total += span_log_prob(start, p - 1, topic);
      start = p;
    }
  }
  return total;
}

}  // namespace permtopic
