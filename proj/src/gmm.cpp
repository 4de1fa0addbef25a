#include "permtopic/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace permtopic {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int k = size();
  if (k < 1) throw std::invalid_argument("Permutation: must contain at least one topic");
  std::vector<bool> seen(order_.size(), false);
  for (int t : order_) {
    if (t < 0 || t >= k || seen[static_cast<std::size_t>(t)]) {
      throw std::invalid_argument("Permutation: not a permutation of 0..K-1");
    }
    seen[static_cast<std::size_t>(t)] = true;
  }
}

Permutation Permutation::identity(int num_topics) {
  std::vector<int> order(static_cast<std::size_t>(num_topics));
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

InversionVector::InversionVector(std::vector<int> counts, int num_topics)
    : counts_(std::move(counts)), num_topics_(num_topics) {
  if (num_topics < 1) throw std::invalid_argument("InversionVector: K must be >= 1");
  if (size() != num_topics - 1) throw std::invalid_argument("InversionVector: length must be K-1");
  for (int j = 0; j < size(); ++j) {
    if (counts_[static_cast<std::size_t>(j)] < 0 ||
        counts_[static_cast<std::size_t>(j)] >= inversion_range(num_topics, j)) {
      throw std::invalid_argument("InversionVector: coordinate " + std::to_string(j) +
                                  " out of range");
    }
  }
}

InversionVector InversionVector::zeros(int num_topics) {
  return InversionVector(std::vector<int>(static_cast<std::size_t>(std::max(num_topics - 1, 0)), 0),
                         num_topics);
}

int InversionVector::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

void InversionVector::set(int j, int value) {
  check_coordinate(num_topics_, j);
  if (value < 0 || value >= inversion_range(num_topics_, j)) {
    throw std::out_of_range("InversionVector::set: value out of range");
  }
  counts_[static_cast<std::size_t>(j)] = value;
}

Permutation compute_pi(const InversionVector& v) {
  const int k = v.num_topics();
  // Insert topics from last to first; topic j lands after exactly v[j] of
  // the larger topics already placed.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(k));
  order.push_back(k - 1);
  for (int j = k - 2; j >= 0; --j) {
    order.insert(order.begin() + v[j], j);
  }
  return Permutation(std::move(order));
}

InversionVector compute_inversions(const Permutation& pi) {
  const int k = pi.size();
  std::vector<int> counts(static_cast<std::size_t>(k - 1), 0);
  for (int pos = 0; pos < k; ++pos) {
    for (int before = 0; before < pos; ++before) {
      if (pi[before] > pi[pos]) ++counts[static_cast<std::size_t>(pi[pos])];
    }
  }
  return InversionVector(std::move(counts), k);
}

std::int64_t kendall_distance(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size()) throw std::invalid_argument("kendall_distance: size mismatch");
  const int k = pi.size();
  std::vector<int> rank(static_cast<std::size_t>(k));
  for (int pos = 0; pos < k; ++pos) rank[static_cast<std::size_t>(sigma[pos])] = pos;
  std::int64_t discordant = 0;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (rank[static_cast<std::size_t>(pi[a])] > rank[static_cast<std::size_t>(pi[b])]) ++discordant;
    }
  }
  return discordant;
}

GmmPrior GmmPrior::make(double rho0, double nu0, int num_topics) {
  if (!(rho0 > 0.0)) throw std::domain_error("GmmPrior: rho0 must be positive");
  if (!(nu0 > 0.0)) throw std::domain_error("GmmPrior: nu0 must be positive");
  GmmPrior prior;
  prior.rho0 = rho0;
  prior.nu0 = nu0;
  prior.vj0.resize(std::max(num_topics - 1, 0));
  for (int j = 0; j + 1 < num_topics; ++j) prior.vj0(j) = vj0_from_rho0(rho0, num_topics, j);
  return prior;
}

int sample_inversion_coordinate(double rho, int num_topics, int j, Rng& rng) {
  const int n = inversion_range(num_topics, j);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double cdf = 0.0;
  for (int value = 0; value < n - 1; ++value) {
    cdf += std::exp(gmm_marginal_log_pmf(value, rho, num_topics, j));
    if (u < cdf) return value;
  }
  return n - 1;
}

InversionVector sample_inversions(const VectorXd& rho, Rng& rng) {
  const int k = static_cast<int>(rho.size()) + 1;
  std::vector<int> counts(static_cast<std::size_t>(k - 1));
  for (int j = 0; j + 1 < k; ++j) {
    if (!(rho(j) > 0.0)) throw std::domain_error("sample_inversions: dispersion must be positive");
    counts[static_cast<std::size_t>(j)] = sample_inversion_coordinate(rho(j), k, j, rng);
  }
  return InversionVector(std::move(counts), k);
}

double rho_posterior_log_density(double rho, std::int64_t sum_vj, std::int64_t num_docs,
                                 const GmmPrior& prior, int num_topics, int j) {
  const double nu = static_cast<double>(num_docs) + prior.nu0;
  const double pseudo = static_cast<double>(sum_vj) + prior.vj0(j) * prior.nu0;
  return -rho * pseudo - nu * log_psi(rho, num_topics, j);
}

double resample_rho_j(double current, std::int64_t sum_vj, std::int64_t num_docs,
                      const GmmPrior& prior, int num_topics, int j, Rng& rng,
                      const SliceOptions& opts) {
  check_coordinate(num_topics, j);
  if (sum_vj < 0 || num_docs < 0) throw std::invalid_argument("resample_rho_j: negative counts");
  auto log_density = [&](double rho) {
    return rho_posterior_log_density(rho, sum_vj, num_docs, prior, num_topics, j);
  };
  double rho = std::clamp(current, opts.lower * 2.0, opts.upper);
  for (int step = 0; step < kSliceThinning; ++step) rho = slice_sample_step(log_density, rho, rng, opts);
  return rho;
}

}  // namespace permtopic
