#pragma once

// Generalized Mallows Model over topic orderings, centred on the identity.
//
// Topics are 0-based throughout. For K topics an ordering is encoded by K-1
// inversion counts; coordinate j (0-based) counts how many topics greater
// than j precede j and takes values 0..K-1-j, i.e. K-j distinct values.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permtopic/slice.hpp"
#include "permtopic/types.hpp"

namespace permtopic {

/// An ordering of the topics 0..K-1, listed first to last.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> order);

  static Permutation identity(int num_topics);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int pos) const { return order_[static_cast<std::size_t>(pos)]; }
  std::span<const int> order() const { return order_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> order_;
};

/// Inversion counts relative to the identity; length K-1.
class InversionVector {
 public:
  InversionVector() = default;
  InversionVector(std::vector<int> counts, int num_topics);

  static InversionVector zeros(int num_topics);

  int num_topics() const { return num_topics_; }
  int size() const { return static_cast<int>(counts_.size()); }
  int operator[](int j) const { return counts_[static_cast<std::size_t>(j)]; }
  std::span<const int> counts() const { return counts_; }
  int total() const;

  // Range-checked update of one coordinate.
  void set(int j, int value);

  bool operator==(const InversionVector&) const = default;

 private:
  std::vector<int> counts_;
  int num_topics_ = 1;
};

Permutation compute_pi(const InversionVector& v);
InversionVector compute_inversions(const Permutation& pi);

/// Number of discordant pairs between two orderings of the same topics.
std::int64_t kendall_distance(const Permutation& pi, const Permutation& sigma);

/// Number of values coordinate j can take.
inline int inversion_range(int num_topics, int j) { return num_topics - j; }

inline void check_coordinate(int num_topics, int j) {
  if (num_topics < 2 || j < 0 || j > num_topics - 2) {
    throw std::out_of_range("inversion coordinate " + std::to_string(j) + " invalid for K=" +
                            std::to_string(num_topics));
  }
}

/// log of the per-coordinate normaliser (1 - e^{-n rho}) / (1 - e^{-rho}),
/// n = K - j.
template <typename Scalar>
Scalar log_psi(Scalar rho, int num_topics, int j) {
  using std::expm1;
  using std::log;
  if (!(rho > Scalar(0))) throw std::domain_error("log_psi: dispersion must be positive");
  check_coordinate(num_topics, j);
  const Scalar n = static_cast<Scalar>(inversion_range(num_topics, j));
  if (rho < Scalar(1e-6)) {
    // log n + log(1 - (n-1) rho / 2 + O(rho^2))
    return log(n) - (n - Scalar(1)) * rho / Scalar(2);
  }
  return log(-expm1(-n * rho)) - log(-expm1(-rho));
}

/// log GMM_j(v_j; rho_j), the marginal of one inversion coordinate.
template <typename Scalar>
Scalar gmm_marginal_log_pmf(int value, Scalar rho, int num_topics, int j) {
  check_coordinate(num_topics, j);
  if (value < 0 || value >= inversion_range(num_topics, j)) {
    throw std::domain_error("gmm_marginal_log_pmf: inversion count out of range");
  }
  return -rho * static_cast<Scalar>(value) - log_psi(rho, num_topics, j);
}

template <typename Scalar>
Scalar gmm_log_pmf(const InversionVector& v, const Vector<Scalar>& rho) {
  if (rho.size() != v.size()) throw std::invalid_argument("gmm_log_pmf: dimension mismatch");
  Scalar total(0);
  for (int j = 0; j < v.size(); ++j) total += gmm_marginal_log_pmf(v[j], rho(j), v.num_topics(), j);
  return total;
}

/// Mean of GMM_j at dispersion rho; also the prior pseudo-count v_{j,0}
/// that makes rho the maximum-likelihood dispersion.
template <typename Scalar>
Scalar vj0_from_rho0(Scalar rho0, int num_topics, int j) {
  using std::expm1;
  if (!(rho0 > Scalar(0))) throw std::domain_error("vj0_from_rho0: rho0 must be positive");
  check_coordinate(num_topics, j);
  const Scalar n = static_cast<Scalar>(inversion_range(num_topics, j));
  if (rho0 < Scalar(1e-3)) {
    // 1/expm1(x) = 1/x - 1/2 + x/12 - x^3/720 + ...
    const Scalar x = rho0;
    return (n - Scalar(1)) / Scalar(2) + x * (Scalar(1) - n * n) / Scalar(12) +
           x * x * x * (n * n * n * n - Scalar(1)) / Scalar(720);
  }
  return Scalar(1) / expm1(rho0) - n / expm1(n * rho0);
}

/// Unnormalised log density of the conjugate prior GMM_0 at rho_j.
template <typename Scalar>
Scalar prior_log_density(Scalar rho, Scalar vj0, Scalar nu0, int num_topics, int j) {
  if (nu0 == Scalar(0)) {
    if (!(rho > Scalar(0))) throw std::domain_error("prior_log_density: dispersion must be positive");
    return Scalar(0);
  }
  return (-rho * vj0 - log_psi(rho, num_topics, j)) * nu0;
}

struct GmmPrior {
  double rho0 = 1.0;
  double nu0 = 1.0;
  VectorXd vj0;  // length K-1

  static GmmPrior make(double rho0, double nu0, int num_topics);
};

/// Draws v ~ GMM(rho) coordinate by coordinate via inverse CDF.
InversionVector sample_inversions(const VectorXd& rho, Rng& rng);

/// Draws one coordinate from GMM_j by inverse CDF.
int sample_inversion_coordinate(double rho, int num_topics, int j, Rng& rng);

constexpr int kSliceThinning = 5;

/// One draw from the posterior GMM_0 over rho_j given the summed inversion
/// counts of `num_docs` documents, obtained by `kSliceThinning` slice updates
/// started at `current`.
double resample_rho_j(double current, std::int64_t sum_vj, std::int64_t num_docs,
                      const GmmPrior& prior, int num_topics, int j, Rng& rng,
                      const SliceOptions& opts = {});

/// Unnormalised log posterior density used by `resample_rho_j`.
double rho_posterior_log_density(double rho, std::int64_t sum_vj, std::int64_t num_docs,
                                 const GmmPrior& prior, int num_topics, int j);

}  // namespace permtopic
