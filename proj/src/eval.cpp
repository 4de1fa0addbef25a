#include "permtopic/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "permtopic/sampler.hpp"
#include "permtopic/slice.hpp"

namespace permtopic {

namespace {

void check_same_length(const Segmentation& hyp, const Segmentation& ref, int window) {
  const int n = ref.num_units();
  if (hyp.num_units() != n) throw std::invalid_argument("segmentations cover different numbers of units");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (window >= n) throw std::invalid_argument("window must be smaller than the document length");
}

VectorXd sample_dirichlet(int size, double concentration, Rng& rng) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  VectorXd x(size);
  for (;;) {
    for (int i = 0; i < size; ++i) x(i) = gamma(rng);
    const double total = x.sum();
    if (total > 0.0) return x / total;
  }
}

int draw(const VectorXd& probs, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double cdf = 0.0;
  for (int i = 0; i + 1 < probs.size(); ++i) {
    cdf += probs(i);
    if (u < cdf) return i;
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

AlignmentScores alignment_scores(const Alignment& hyp, const std::vector<std::vector<std::string>>& reference) {
  if (hyp.labels.size() != reference.size()) throw std::invalid_argument("alignment_scores: document count mismatch");
  std::map<std::pair<std::string, int>, long> joint;
  long total = 0;
  for (std::size_t d = 0; d < reference.size(); ++d) {
    if (hyp.labels[d].size() != reference[d].size()) {
      throw std::invalid_argument("alignment_scores: paragraph count mismatch");
    }
    for (std::size_t p = 0; p < reference[d].size(); ++p) {
      ++joint[{reference[d][p], hyp.labels[d][p]}];
      ++total;
    }
  }
  if (total == 0) throw std::invalid_argument("alignment_scores: no paragraphs");
  std::map<std::string, long> best_per_heading;
  std::map<int, long> best_per_cluster;
  for (const auto& [key, count] : joint) {
    auto& h = best_per_heading[key.first];
    h = std::max(h, count);
    auto& c = best_per_cluster[key.second];
    c = std::max(c, count);
  }
  AlignmentScores s;
  for (const auto& [_, c] : best_per_heading) s.recall += static_cast<double>(c);
  for (const auto& [_, c] : best_per_cluster) s.precision += static_cast<double>(c);
  s.recall /= static_cast<double>(total);
  s.precision /= static_cast<double>(total);
  s.f = 2.0 * s.recall * s.precision / (s.recall + s.precision);
  return s;
}

std::vector<std::vector<std::string>> heading_labels(const Headings& headings) {
  std::vector<std::vector<std::string>> out;
  for (const auto& doc : headings.per_document) {
    std::vector<std::string> labels;
    for (const auto& h : doc) {
      if (!h) throw std::invalid_argument("heading_labels: paragraph without heading");
      labels.push_back(*h);
    }
    out.push_back(std::move(labels));
  }
  return out;
}

Segmentation reference_segmentation(std::span<const std::string> headings) {
  if (headings.empty()) throw std::invalid_argument("reference_segmentation: no paragraphs");
  Segmentation seg;
  int run = 1;
  for (std::size_t p = 1; p < headings.size(); ++p) {
    if (headings[p] != headings[p - 1]) {
      seg.lengths.push_back(run);
      run = 0;
    }
    ++run;
  }
  seg.lengths.push_back(run);
  return seg;
}

int default_window(const Segmentation& ref) {
  const double mean = static_cast<double>(ref.num_units()) / static_cast<double>(ref.num_segments());
  return std::max(2, static_cast<int>(std::floor(mean / 2.0)));
}

double pk(const Segmentation& hyp, const Segmentation& ref, int window) {
  check_same_length(hyp, ref, window);
  const auto h = hyp.unit_segments();
  const auto r = ref.unit_segments();
  const int n = ref.num_units();
  int disagree = 0;
  for (int i = 0; i + window < n; ++i) {
    const bool same_h = h[static_cast<std::size_t>(i)] == h[static_cast<std::size_t>(i + window)];
    const bool same_r = r[static_cast<std::size_t>(i)] == r[static_cast<std::size_t>(i + window)];
    if (same_h != same_r) ++disagree;
  }
  return static_cast<double>(disagree) / static_cast<double>(n - window);
}

double window_diff(const Segmentation& hyp, const Segmentation& ref, int window) {
  check_same_length(hyp, ref, window);
  const auto h = hyp.unit_segments();
  const auto r = ref.unit_segments();
  const int n = ref.num_units();
  int disagree = 0;
  for (int i = 0; i + window < n; ++i) {
    // Segment indices increase by one per boundary crossed.
    const int bh = h[static_cast<std::size_t>(i + window)] - h[static_cast<std::size_t>(i)];
    const int br = r[static_cast<std::size_t>(i + window)] - r[static_cast<std::size_t>(i)];
    if (bh != br) ++disagree;
  }
  return static_cast<double>(disagree) / static_cast<double>(n - window);
}

double kendall_tau_metric(std::span<const int> predicted, std::span<const int> reference) {
  const int n = static_cast<int>(reference.size());
  if (n < 2) throw std::invalid_argument("kendall_tau_metric: need at least two items");
  if (static_cast<int>(predicted.size()) != n) throw std::invalid_argument("kendall_tau_metric: size mismatch");
  const Permutation pred(std::vector<int>(predicted.begin(), predicted.end()));
  const Permutation ref(std::vector<int>(reference.begin(), reference.end()));
  const double pairs = 0.5 * n * (n - 1);
  return 1.0 - 2.0 * static_cast<double>(kendall_distance(pred, ref)) / pairs;
}

void SynthConfig::validate() const {
  if (num_topics < 1 || num_documents < 1 || vocab_size < 1) throw std::invalid_argument("SynthConfig: sizes must be positive");
  if (min_paragraphs < 1 || max_paragraphs < min_paragraphs) throw std::invalid_argument("SynthConfig: bad paragraph range");
  if (min_words < 0 || max_words < min_words) throw std::invalid_argument("SynthConfig: bad word range");
  if (!(theta0 > 0.0) || !(beta0 > 0.0) || !(rho0 > 0.0) || !(nu0 > 0.0)) {
    throw std::invalid_argument("SynthConfig: hyperparameters must be positive");
  }
}

Headings SyntheticCorpus::truth_headings() const {
  Headings h;
  for (const auto& doc : z) {
    std::vector<std::optional<std::string>> labels;
    for (int k : doc) labels.emplace_back("topic" + std::to_string(k));
    h.per_document.push_back(std::move(labels));
  }
  return h;
}

SynthModel sample_synth_model(const SynthConfig& config, Rng& rng) {
  config.validate();
  const int k = config.num_topics;
  SynthModel model;
  model.beta.resize(k, config.vocab_size);
  for (int t = 0; t < k; ++t) model.beta.row(t) = sample_dirichlet(config.vocab_size, config.beta0, rng).transpose();
  model.theta = sample_dirichlet(k, config.theta0, rng);
  model.rho.resize(std::max(k - 1, 0));
  if (k > 1) {
    const GmmPrior prior = GmmPrior::make(config.rho0, config.nu0, k);
    for (int j = 0; j + 1 < k; ++j) {
      auto log_density = [&](double rho) { return prior_log_density(rho, prior.vj0(j), prior.nu0, k, j); };
      double rho = config.rho0;
      for (int step = 0; step < 100; ++step) rho = slice_sample_step(log_density, rho, rng);
      model.rho(j) = rho;
    }
  }
  return model;
}

SyntheticCorpus sample_documents(const SynthConfig& config, const SynthModel& model, int count,
                                 bool canonical_order, Rng& rng, const std::string& id_prefix) {
  const int k = config.num_topics;
  SyntheticCorpus out;
  out.model = model;
  for (int w = 0; w < config.vocab_size; ++w) out.corpus.vocabulary.add("w" + std::to_string(w));
  std::uniform_int_distribution<int> paragraphs(config.min_paragraphs, config.max_paragraphs);
  std::uniform_int_distribution<int> words(config.min_words, config.max_words);
  for (int d = 0; d < count; ++d) {
    const int n = paragraphs(rng);
    std::vector<int> draws(static_cast<std::size_t>(n));
    for (int& t : draws) t = draw(model.theta, rng);
    InversionVector v = (canonical_order || k == 1) ? InversionVector::zeros(k) : sample_inversions(model.rho, rng);
    std::vector<int> z = compute_z(draws, compute_pi(v));

    Document doc;
    doc.id = id_prefix + std::to_string(d);
    for (int p = 0; p < n; ++p) {
      const int len = words(rng);
      std::vector<int> ids(static_cast<std::size_t>(len));
      std::string text;
      for (int& id : ids) {
        id = draw(model.beta.row(z[static_cast<std::size_t>(p)]).transpose(), rng);
        if (!text.empty()) text.push_back(' ');
        text += out.corpus.vocabulary.token(id);
      }
      doc.paragraphs.push_back(Paragraph{WordBag::from_ids(ids), std::move(text)});
    }
    out.corpus.documents.push_back(std::move(doc));
    out.draws.push_back(std::move(draws));
    out.inversions.push_back(std::move(v));
    out.z.push_back(std::move(z));
  }
  return out;
}

SyntheticCorpus generate_synthetic(const SynthConfig& config, Rng& rng) {
  const SynthModel model = sample_synth_model(config, rng);
  return sample_documents(config, model, config.num_documents, false, rng);
}

void MetricTable::add(const std::string& metric, std::vector<double> per_chain) {
  metrics.push_back(metric);
  values.push_back(std::move(per_chain));
}

void MetricTable::write(std::ostream& out) const {
  std::size_t chains = 0;
  for (const auto& v : values) chains = std::max(chains, v.size());
  if (!title.empty()) out << "# " << title << '\n';
  out << std::left << std::setw(16) << "metric";
  for (std::size_t c = 0; c < chains; ++c) out << std::right << std::setw(10) << ("chain" + std::to_string(c));
  out << std::right << std::setw(10) << "mean" << '\n';
  out << std::fixed << std::setprecision(4);
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    out << std::left << std::setw(16) << metrics[m] << std::right;
    for (std::size_t c = 0; c < chains; ++c) {
      if (c < values[m].size()) {
        out << std::setw(10) << values[m][c];
      } else {
        out << std::setw(10) << "-";
      }
    }
    const double mean = values[m].empty() ? 0.0
                                           : std::accumulate(values[m].begin(), values[m].end(), 0.0) /
                                                 static_cast<double>(values[m].size());
    out << std::setw(10) << mean << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace permtopic
