#pragma once

// Dirichlet compound multinomial likelihoods and the per-document span cache.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/types.hpp"

namespace permtopic {

/// Reentrant log-gamma; std::lgamma may write the global signgam.
inline double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

/// log Gamma(a + n) - log Gamma(a) for integer n >= 0.
inline double log_rising(double a, std::int64_t n) {
  if (n <= 8) {
    double sum = 0.0;
    for (std::int64_t m = 0; m < n; ++m) sum += std::log(a + static_cast<double>(m));
    return sum;
  }
  return log_gamma(a + static_cast<double>(n)) - log_gamma(a);
}

/// log DCM(x; alpha) for a bag `x` over |alpha| words.
template <typename Scalar>
Scalar log_dcm(const WordBag& x, const Vector<Scalar>& alpha) {
  if ((alpha.array() <= Scalar(0)).any()) throw std::domain_error("log_dcm: alpha must be positive");
  const Scalar alpha_sum = alpha.sum();
  Scalar total = log_gamma(alpha_sum) - log_gamma(alpha_sum + static_cast<Scalar>(x.total));
  for (const auto& [w, c] : x.entries) {
    if (w < 0 || w >= alpha.size()) throw std::out_of_range("log_dcm: word id out of range");
    total += log_gamma(alpha(w) + static_cast<Scalar>(c)) - log_gamma(alpha(w));
  }
  return total;
}

/// log DCM(x | y; alpha) = log DCM(x; alpha + counts(y)).
template <typename Scalar>
Scalar log_dcm_posterior(const WordBag& x, const WordBag& y, const Vector<Scalar>& alpha) {
  Vector<Scalar> updated = alpha;
  for (const auto& [w, c] : y.entries) {
    if (w < 0 || w >= alpha.size()) throw std::out_of_range("log_dcm_posterior: word id out of range");
    updated(w) += static_cast<Scalar>(c);
  }
  return log_dcm(x, updated);
}

/// Word-topic count table N(k, w) with per-topic totals, under a symmetric
/// Dirichlet concentration beta0.
class TopicWordCounts {
 public:
  TopicWordCounts() = default;
  TopicWordCounts(int num_topics, int vocab_size, double beta0);

  int num_topics() const { return static_cast<int>(counts_.rows()); }
  int vocab_size() const { return static_cast<int>(counts_.cols()); }
  double beta0() const { return beta0_; }

  std::int64_t count(int k, int w) const { return counts_(k, w); }
  std::int64_t total(int k) const { return totals_(k); }
  const MatrixXi& counts() const { return counts_; }
  const VectorXi& totals() const { return totals_; }

  void add(int k, const WordBag& bag) { update(k, bag, 1); }
  void remove(int k, const WordBag& bag) { update(k, bag, -1); }
  void swap_topics(int a, int b);

  /// log DCM(x | words currently assigned to k; beta0).
  double log_posterior(const WordBag& x, int k) const;

  bool operator==(const TopicWordCounts& o) const {
    return beta0_ == o.beta0_ && counts_ == o.counts_ && totals_ == o.totals_;
  }

 private:
  void update(int k, const WordBag& bag, std::int64_t sign);

  MatrixXi counts_;
  VectorXi totals_;
  double beta0_ = 0.1;
};

/// Log probability of a document's words given paragraph topics `z` and the
/// counts of every other document, evaluated directly without caching.
/// `z` may be any assignment; paragraphs sharing a topic are pooled.
double doc_log_prob(const Document& doc, std::span<const int> z, const TopicWordCounts& external);

struct SpanKey {
  int first = 0;  // 0-based, inclusive
  int last = 0;   // 0-based, inclusive
  int topic = 0;

  bool operator==(const SpanKey&) const = default;
};

/// Lazily filled (first, last, topic) -> log probability table for one
/// document under fixed external counts. Must be reset whenever the
/// document or the external counts change.
class SpanCache {
 public:
  void reset(const Document& doc, const TopicWordCounts& external);

  /// Log probability of paragraphs first..last all drawn from `topic`.
  /// On a miss, every prefix (first, l, topic) for l <= last is filled too.
  double span_log_prob(int first, int last, int topic);

  /// Sum of span probabilities for a contiguous assignment `z`.
  double doc_log_prob(std::span<const int> z);

  std::int64_t paragraph_evaluations() const { return paragraph_evaluations_; }
  std::int64_t lookups() const { return lookups_; }
  std::int64_t hits() const { return hits_; }
  void reset_counters() { paragraph_evaluations_ = lookups_ = hits_ = 0; }

  void set_tracing(bool on) { tracing_ = on; }
  const std::vector<SpanKey>& trace() const { return trace_; }

 private:
  std::size_t index(int first, int last, int topic) const {
    return (static_cast<std::size_t>(first) * static_cast<std::size_t>(num_paragraphs_) +
            static_cast<std::size_t>(last)) * static_cast<std::size_t>(num_topics_) +
           static_cast<std::size_t>(topic);
  }

  const Document* doc_ = nullptr;
  const TopicWordCounts* external_ = nullptr;
  int num_paragraphs_ = 0;
  int num_topics_ = 0;
  std::vector<double> values_;
  std::vector<std::uint32_t> stamps_;
  std::uint32_t generation_ = 0;
  std::vector<std::int64_t> scratch_;  // per-word counts of the span being extended

  std::int64_t paragraph_evaluations_ = 0;
  std::int64_t lookups_ = 0;
  std::int64_t hits_ = 0;
  bool tracing_ = false;
  std::vector<SpanKey> trace_;
};

}  // namespace permtopic
