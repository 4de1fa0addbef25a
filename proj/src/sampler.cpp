#include "permtopic/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace permtopic {

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::Full:
      return "full";
    case Variant::Constrained:
      return "constrained";
    case Variant::Uniform:
      return "uniform";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "full") return Variant::Full;
  if (name == "constrained") return Variant::Constrained;
  if (name == "uniform") return Variant::Uniform;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void SamplerConfig::validate() const {
  if (num_topics < 1) throw std::invalid_argument("number of topics must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (chains < 1) throw std::invalid_argument("chains must be >= 1");
  if (!(theta0 > 0.0) || !(beta0 > 0.0) || !(rho0 > 0.0) || !(nu0_scale > 0.0)) {
    throw std::invalid_argument("hyperparameters must be positive");
  }
}

std::vector<int> compute_z(std::span<const int> draws, const Permutation& pi) {
  const int k = pi.size();
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int t : draws) {
    if (t < 0 || t >= k) throw std::out_of_range("compute_z: topic index out of range");
    ++counts[static_cast<std::size_t>(t)];
  }
  std::vector<int> z;
  z.reserve(draws.size());
  for (int pos = 0; pos < k; ++pos) {
    const int topic = pi[pos];
    z.insert(z.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(topic)]), topic);
  }
  return z;
}

std::string check_consistency(const Corpus& corpus, const ChainState& state, const SamplerConfig& config) {
  const int k = config.num_topics;
  if (static_cast<int>(state.documents.size()) != corpus.num_documents()) return "document count mismatch";
  if (state.rho.size() != std::max(k - 1, 0)) return "rho has wrong length";
  TopicWordCounts words(k, corpus.vocabulary.size(), config.beta0);
  VectorXi draws = VectorXi::Zero(k);
  for (int d = 0; d < corpus.num_documents(); ++d) {
    const auto& doc = corpus.documents[static_cast<std::size_t>(d)];
    const auto& ds = state.documents[static_cast<std::size_t>(d)];
    if (static_cast<int>(ds.draws.size()) != doc.size()) return "draw count mismatch in document " + doc.id;
    if (ds.z != compute_z(ds.draws, compute_pi(ds.inversions))) return "z out of date in document " + doc.id;
    if (config.variant == Variant::Constrained && ds.inversions.total() != 0) {
      return "nonzero inversion under constrained variant in document " + doc.id;
    }
    std::vector<bool> closed(static_cast<std::size_t>(k), false);
    for (int p = 0; p < doc.size(); ++p) {
      const int topic = ds.z[static_cast<std::size_t>(p)];
      if (p > 0 && ds.z[static_cast<std::size_t>(p - 1)] != topic) {
        closed[static_cast<std::size_t>(ds.z[static_cast<std::size_t>(p - 1)])] = true;
      }
      if (closed[static_cast<std::size_t>(topic)]) return "topic not contiguous in document " + doc.id;
      words.add(topic, doc.paragraphs[static_cast<std::size_t>(p)].words);
      ++draws(topic);
    }
  }
  if (!(words == state.word_topic)) return "word-topic table differs from recount";
  if (draws != state.topic_draws) return "topic-draw table differs from recount";
  return {};
}

Rng make_chain_rng(std::uint64_t seed, int chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain), 0x9e3779b9u};
  return Rng(seq);
}

GibbsSampler::GibbsSampler(const Corpus& corpus, const SamplerConfig& config, Rng rng)
    : corpus_(corpus), config_(config), rng_(std::move(rng)) {
  config_.validate();
  const int k = config_.num_topics;
  if (corpus_.num_documents() < 1) throw std::invalid_argument("GibbsSampler: empty corpus");
  if (k > 1) prior_ = GmmPrior::make(config_.rho0, config_.nu0(corpus_.num_documents()), k);

  state_.word_topic = TopicWordCounts(k, corpus_.vocabulary.size(), config_.beta0);
  state_.topic_draws = VectorXi::Zero(k);
  const double initial_rho = config_.variant == Variant::Uniform ? 0.0 : config_.rho0;
  state_.rho = VectorXd::Constant(std::max(k - 1, 0), initial_rho);

  std::uniform_int_distribution<int> topic(0, k - 1);
  state_.documents.reserve(corpus_.documents.size());
  for (const auto& doc : corpus_.documents) {
    if (doc.size() < 1) throw std::invalid_argument("GibbsSampler: document " + doc.id + " has no paragraphs");
    DocumentState ds;
    ds.draws.resize(static_cast<std::size_t>(doc.size()));
    for (int& t : ds.draws) t = topic(rng_);
    ds.inversions = InversionVector::zeros(k);
    refresh_z(ds);
    for (int p = 0; p < doc.size(); ++p) {
      const int t = ds.z[static_cast<std::size_t>(p)];
      state_.word_topic.add(t, doc.paragraphs[static_cast<std::size_t>(p)].words);
      ++state_.topic_draws(t);
    }
    total_draws_ += doc.size();
    state_.documents.push_back(std::move(ds));
  }
}

void GibbsSampler::refresh_z(DocumentState& doc) const {
  doc.z = compute_z(doc.draws, compute_pi(doc.inversions));
}

void GibbsSampler::begin_document(int d) {
  if (active_ >= 0) throw std::logic_error("begin_document: another document is active");
  if (d < 0 || d >= corpus_.num_documents()) throw std::out_of_range("begin_document: bad index");
  const auto& doc = corpus_.documents[static_cast<std::size_t>(d)];
  const auto& ds = state_.documents[static_cast<std::size_t>(d)];
  for (int p = 0; p < doc.size(); ++p) {
    state_.word_topic.remove(ds.z[static_cast<std::size_t>(p)], doc.paragraphs[static_cast<std::size_t>(p)].words);
  }
  cache_.reset(doc, state_.word_topic);
  active_ = d;
}

void GibbsSampler::end_document() {
  if (active_ < 0) throw std::logic_error("end_document: no active document");
  const auto& doc = corpus_.documents[static_cast<std::size_t>(active_)];
  const auto& ds = state_.documents[static_cast<std::size_t>(active_)];
  for (int p = 0; p < doc.size(); ++p) {
    state_.word_topic.add(ds.z[static_cast<std::size_t>(p)], doc.paragraphs[static_cast<std::size_t>(p)].words);
  }
  active_ = -1;
}

int GibbsSampler::draw_categorical(const VectorXd& probs) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng_);
  double cdf = 0.0;
  for (int i = 0; i + 1 < probs.size(); ++i) {
    cdf += probs(i);
    if (u < cdf) return i;
  }
  return static_cast<int>(probs.size()) - 1;
}

VectorXd GibbsSampler::topic_draw_conditional(int i) {
  if (active_ < 0) throw std::logic_error("topic_draw_conditional: no active document");
  auto& ds = state_.documents[static_cast<std::size_t>(active_)];
  if (i < 0 || i >= static_cast<int>(ds.draws.size())) throw std::out_of_range("topic draw index");
  const int k = config_.num_topics;
  const int old = ds.draws[static_cast<std::size_t>(i)];
  const Permutation pi = compute_pi(ds.inversions);
  const double denom = std::log(static_cast<double>(total_draws_ - 1) + k * config_.theta0);

  VectorXd log_weights(k);
  for (int t = 0; t < k; ++t) {
    const double others = static_cast<double>(state_.topic_draws(t) - (t == old ? 1 : 0));
    ds.draws[static_cast<std::size_t>(i)] = t;
    const std::vector<int> z = compute_z(ds.draws, pi);
    log_weights(t) = std::log(others + config_.theta0) - denom + cache_.doc_log_prob(z);
  }
  ds.draws[static_cast<std::size_t>(i)] = old;
  const double top = log_weights.maxCoeff();
  VectorXd probs = (log_weights.array() - top).exp();
  return probs / probs.sum();
}

void GibbsSampler::resample_topic_draw(int i) {
  const VectorXd probs = topic_draw_conditional(i);
  auto& ds = state_.documents[static_cast<std::size_t>(active_)];
  const int chosen = draw_categorical(probs);
  const int old = ds.draws[static_cast<std::size_t>(i)];
  --state_.topic_draws(old);
  ++state_.topic_draws(chosen);
  ds.draws[static_cast<std::size_t>(i)] = chosen;
  refresh_z(ds);
}

VectorXd GibbsSampler::inversion_conditional(int j) {
  if (active_ < 0) throw std::logic_error("inversion_conditional: no active document");
  const int k = config_.num_topics;
  check_coordinate(k, j);
  auto& ds = state_.documents[static_cast<std::size_t>(active_)];
  const int n = inversion_range(k, j);
  const int old = ds.inversions[j];
  VectorXd log_weights(n);
  for (int value = 0; value < n; ++value) {
    ds.inversions.set(j, value);
    const std::vector<int> z = compute_z(ds.draws, compute_pi(ds.inversions));
    double prior = 0.0;
    if (config_.variant == Variant::Full) prior = gmm_marginal_log_pmf(value, state_.rho(j), k, j);
    log_weights(value) = prior + cache_.doc_log_prob(z);
  }
  ds.inversions.set(j, old);
  const double top = log_weights.maxCoeff();
  VectorXd probs = (log_weights.array() - top).exp();
  return probs / probs.sum();
}

void GibbsSampler::resample_inversion(int j) {
  if (config_.variant == Variant::Constrained) return;
  const VectorXd probs = inversion_conditional(j);
  const int chosen = draw_categorical(probs);
  auto& ds = state_.documents[static_cast<std::size_t>(active_)];
  ds.inversions.set(j, chosen);
  refresh_z(ds);
}

int GibbsSampler::relabel_topics() {
  if (config_.variant != Variant::Full) return 0;
  if (active_ >= 0) throw std::logic_error("relabel_topics: a document is active");
  const int k = config_.num_topics;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<InversionVector> proposed(state_.documents.size());
  auto prior = [&](const VectorXd& rho) {
    double lp = 0.0;
    for (int j = 0; j + 1 < k; ++j) lp += prior_log_density(rho(j), prior_.vj0(j), prior_.nu0, k, j);
    return lp;
  };
  int accepted = 0;
  for (int a = 0; a + 1 < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      auto rename = [a, b](int& t) {
        if (t == a) {
          t = b;
        } else if (t == b) {
          t = a;
        }
      };
      for (int carry_rho = 0; carry_rho < 2; ++carry_rho) {
        // The dispersions either stay with their coordinates or follow the
        // renamed topics (only coordinates 0..K-2 exist).
        VectorXd rho = state_.rho;
        if (carry_rho) {
          if (b == k - 1) continue;
          std::swap(rho(a), rho(b));
        }
        double delta = carry_rho ? prior(rho) - prior(state_.rho) : 0.0;
        for (std::size_t d = 0; d < state_.documents.size(); ++d) {
          const InversionVector& v = state_.documents[d].inversions;
          const Permutation pi = compute_pi(v);
          std::vector<int> order(pi.order().begin(), pi.order().end());
          for (int& t : order) rename(t);
          proposed[d] = compute_inversions(Permutation(std::move(order)));
          delta += gmm_log_pmf(proposed[d], rho) - gmm_log_pmf(v, state_.rho);
        }
        if (!(delta >= 0.0 || unif(rng_) < std::exp(delta))) continue;
        ++accepted;
        for (std::size_t d = 0; d < state_.documents.size(); ++d) {
          auto& ds = state_.documents[d];
          for (int& t : ds.draws) rename(t);
          ds.inversions = std::move(proposed[d]);
          refresh_z(ds);
        }
        state_.rho = rho;
        state_.word_topic.swap_topics(a, b);
        std::swap(state_.topic_draws(a), state_.topic_draws(b));
      }
    }
  }
  return accepted;
}

void GibbsSampler::resample_dispersions() {
  if (config_.variant != Variant::Full) return;
  const int k = config_.num_topics;
  for (int j = 0; j + 1 < k; ++j) {
    std::int64_t sum = 0;
    for (const auto& ds : state_.documents) sum += ds.inversions[j];
    state_.rho(j) = resample_rho_j(state_.rho(j), sum, corpus_.num_documents(), prior_, k, j, rng_);
  }
}

void GibbsSampler::sweep() {
  const int k = config_.num_topics;
  for (int d = 0; d < corpus_.num_documents(); ++d) {
    begin_document(d);
    const int n = corpus_.documents[static_cast<std::size_t>(d)].size();
    for (int i = 0; i < n; ++i) resample_topic_draw(i);
    if (config_.variant != Variant::Constrained) {
      for (int j = 0; j + 1 < k; ++j) resample_inversion(j);
    }
    end_document();
  }
  if (config_.relabel) relabel_topics();
  resample_dispersions();
  ++iteration_;
}

double GibbsSampler::joint_log_prob() const {
  if (active_ >= 0) throw std::logic_error("joint_log_prob: a document is active");
  const int k = config_.num_topics;
  const auto& words = state_.word_topic;
  const double beta = config_.beta0;
  const double w_beta = beta * static_cast<double>(words.vocab_size());
  double total = 0.0;
  for (int t = 0; t < k; ++t) {
    total += log_gamma(w_beta) - log_gamma(w_beta + static_cast<double>(words.total(t)));
    for (int w = 0; w < words.vocab_size(); ++w) {
      const std::int64_t c = words.count(t, w);
      if (c > 0) total += log_gamma(beta + static_cast<double>(c)) - log_gamma(beta);
    }
  }
  const double k_theta = k * config_.theta0;
  total += log_gamma(k_theta) - log_gamma(k_theta + static_cast<double>(total_draws_));
  for (int t = 0; t < k; ++t) {
    total += log_gamma(config_.theta0 + static_cast<double>(state_.topic_draws(t))) - log_gamma(config_.theta0);
  }
  for (int j = 0; j + 1 < k; ++j) {
    if (config_.variant == Variant::Full) {
      for (const auto& ds : state_.documents) total += gmm_marginal_log_pmf(ds.inversions[j], state_.rho(j), k, j);
      total += prior_log_density(state_.rho(j), prior_.vj0(j), prior_.nu0, k, j);
    } else if (config_.variant == Variant::Uniform) {
      total -= static_cast<double>(state_.documents.size()) * std::log(static_cast<double>(inversion_range(k, j)));
    }
  }
  return total;
}

PosteriorSample GibbsSampler::sample(int chain) const {
  if (active_ >= 0) throw std::logic_error("sample: a document is active");
  return PosteriorSample{config_, chain, iteration_, state_};
}

PosteriorSample run_chain(const Corpus& corpus, const SamplerConfig& config, Rng rng, int chain,
                          const SweepObserver& observer, std::vector<double>* trace) {
  GibbsSampler sampler(corpus, config, std::move(rng));
  for (int it = 0; it < config.iterations; ++it) {
    sampler.sweep();
    if (trace) trace->push_back(sampler.joint_log_prob());
    if (observer) observer(sampler);
  }
  return sampler.sample(chain);
}

std::vector<PosteriorSample> run_chains(const Corpus& corpus, const SamplerConfig& config, int workers) {
  config.validate();
  std::vector<PosteriorSample> samples(static_cast<std::size_t>(config.chains));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.chains));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next++; c < config.chains; c = next++) {
      try {
        samples[static_cast<std::size_t>(c)] = run_chain(corpus, config, make_chain_rng(config.seed, c), c);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers, 1, config.chains);
  std::vector<std::jthread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return samples;
}

MatrixXd estimate_beta(const TopicWordCounts& counts, double beta0) {
  const double w = static_cast<double>(counts.vocab_size());
  MatrixXd beta = counts.counts().cast<double>().array() + beta0;
  for (int k = 0; k < counts.num_topics(); ++k) {
    beta.row(k) /= static_cast<double>(counts.total(k)) + w * beta0;
  }
  return beta;
}

MatrixXd estimate_beta(const PosteriorSample& sample, double beta0) {
  return estimate_beta(sample.state.word_topic, beta0);
}

VectorXd estimate_theta(const VectorXi& paragraph_topic_counts, double theta0) {
  const double k = static_cast<double>(paragraph_topic_counts.size());
  const double total = static_cast<double>(paragraph_topic_counts.sum());
  return (paragraph_topic_counts.cast<double>().array() + theta0) / (total + k * theta0);
}

VectorXd estimate_theta(const PosteriorSample& sample, double theta0) {
  return estimate_theta(sample.state.topic_draws, theta0);
}

}  // namespace permtopic
