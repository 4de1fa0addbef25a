#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "permtopic/sampler.hpp"

using namespace permtopic;

namespace {

Corpus to_corpus(const oracle::ToyCorpus& toy) {
  Corpus c;
  for (int w = 0; w < toy.vocab_size; ++w) c.vocabulary.add("w" + std::to_string(w));
  for (std::size_t d = 0; d < toy.docs.size(); ++d) {
    Document doc;
    doc.id = "d" + std::to_string(d);
    for (const auto& words : toy.docs[d]) doc.paragraphs.push_back({WordBag::from_ids(words), ""});
    c.documents.push_back(std::move(doc));
  }
  return c;
}

oracle::ToyCorpus random_toy(int docs, int paragraphs, int k, int vocab, std::mt19937_64& rng) {
  oracle::ToyCorpus toy;
  toy.num_topics = k;
  toy.vocab_size = vocab;
  std::uniform_int_distribution<int> word(0, vocab - 1);
  std::uniform_int_distribution<int> length(1, 6);
  for (int d = 0; d < docs; ++d) {
    std::vector<std::vector<int>> doc;
    for (int p = 0; p < paragraphs; ++p) {
      std::vector<int> ids(static_cast<std::size_t>(length(rng)));
      for (int& id : ids) id = word(rng);
      doc.push_back(ids);
    }
    toy.docs.push_back(doc);
  }
  return toy;
}

oracle::ToyCorpus empty_toy(int docs, int paragraphs, int k) {
  oracle::ToyCorpus toy;
  toy.num_topics = k;
  toy.vocab_size = 1;
  toy.docs.assign(static_cast<std::size_t>(docs),
                  std::vector<std::vector<int>>(static_cast<std::size_t>(paragraphs)));
  return toy;
}

std::vector<int> counts_of(const InversionVector& v) { return {v.counts().begin(), v.counts().end()}; }

// Full joint of the toy corpus with the sampler's rho held fixed.
double oracle_joint(const oracle::ToyCorpus& toy, const std::vector<std::vector<int>>& draws,
                    const std::vector<std::vector<int>>& inversions, const std::vector<double>& rho,
                    const SamplerConfig& config) {
  const int k = toy.num_topics;
  std::vector<std::vector<int>> z;
  double gmm = 0.0;
  for (std::size_t d = 0; d < draws.size(); ++d) {
    z.push_back(oracle::layout(draws[d], oracle::permutation_with_inversions(inversions[d], k)));
    if (config.variant == Variant::Full) gmm += oracle::log_gmm(inversions[d], rho, k);
  }
  return oracle::log_words_given_z(toy, z, config.beta0) + oracle::log_draws(draws, k, config.theta0) + gmm;
}

struct Snapshot {
  std::vector<std::vector<int>> draws;
  std::vector<std::vector<int>> inversions;
  std::vector<double> rho;
};

Snapshot snapshot(const ChainState& st) {
  Snapshot s;
  for (const auto& ds : st.documents) {
    s.draws.push_back(ds.draws);
    s.inversions.push_back(counts_of(ds.inversions));
  }
  s.rho.assign(st.rho.data(), st.rho.data() + st.rho.size());
  return s;
}

VectorXd normalise(const std::vector<double>& log_weights) {
  VectorXd p(static_cast<Eigen::Index>(log_weights.size()));
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  for (std::size_t i = 0; i < log_weights.size(); ++i) p(static_cast<Eigen::Index>(i)) = std::exp(log_weights[i] - top);
  return p / p.sum();
}

}  // namespace

TEST_CASE("compute_z") {
  // 1-based example t={1,1,1,1,2,4,4}, pi=(2,4,3,1) -> z=(2,4,4,1,1,1,1).
  const std::vector<int> t{0, 0, 0, 0, 1, 3, 3};
  CHECK(compute_z(t, Permutation({1, 3, 2, 0})) == std::vector<int>{1, 3, 3, 0, 0, 0, 0});
  // Draw order within the bag is irrelevant.
  CHECK(compute_z(std::vector<int>{3, 0, 1, 0, 3, 0, 0}, Permutation({1, 3, 2, 0})) ==
        std::vector<int>{1, 3, 3, 0, 0, 0, 0});
  CHECK(compute_z(std::vector<int>{2, 2, 2}, Permutation({1, 0, 2})) == std::vector<int>{2, 2, 2});
  CHECK(compute_z(std::vector<int>{0, 1, 2}, Permutation::identity(3)) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(compute_z(std::vector<int>{0, 3}, Permutation::identity(3)), std::out_of_range);
}

TEST_CASE("config validation and variants") {
  SamplerConfig c;
  CHECK(c.num_topics == 10);
  CHECK(c.iterations == 10000);
  CHECK(c.chains == 5);
  CHECK(c.theta0 == 0.1);
  CHECK(c.beta0 == 0.1);
  CHECK(c.rho0 == 1.0);
  CHECK(c.nu0(40) == doctest::Approx(4.0));
  CHECK_NOTHROW(c.validate());
  c.num_topics = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.beta0 = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.iterations = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  for (Variant v : {Variant::Full, Variant::Constrained, Variant::Uniform}) CHECK(parse_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_variant("mallows"), std::invalid_argument);
}

TEST_CASE("initial state") {
  std::mt19937_64 gen(1);
  const auto toy = random_toy(4, 5, 3, 6, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 3;
  config.rho0 = 1.5;
  GibbsSampler a(corpus, config, Rng(9));
  CHECK(check_consistency(corpus, a.state(), config).empty());
  for (const auto& ds : a.state().documents) CHECK(ds.inversions.total() == 0);
  CHECK(a.state().rho == VectorXd::Constant(2, 1.5));
  CHECK(a.state().topic_draws.sum() == corpus.num_paragraphs());
  GibbsSampler b(corpus, config, Rng(9));
  CHECK(a.state() == b.state());

  SUBCASE("K = 1 gives constant z") {
    config.num_topics = 1;
    GibbsSampler one(corpus, config, Rng(3));
    one.sweep();
    for (const auto& ds : one.state().documents) {
      for (int z : ds.z) CHECK(z == 0);
    }
    CHECK(one.state().rho.size() == 0);
    CHECK(check_consistency(corpus, one.state(), config).empty());
  }
  SUBCASE("uniform starts with rho at zero") {
    config.variant = Variant::Uniform;
    GibbsSampler u(corpus, config, Rng(3));
    CHECK(u.state().rho == VectorXd::Zero(2));
  }
  Corpus bad = corpus;
  bad.documents[1].paragraphs.clear();
  CHECK_THROWS_AS(GibbsSampler(bad, config, Rng(1)), std::invalid_argument);
}

TEST_CASE("topic-draw conditional matches enumeration") {
  std::mt19937_64 gen(21);
  for (Variant variant : {Variant::Full, Variant::Uniform, Variant::Constrained}) {
    for (int k : {2, 3}) {
      const auto toy = random_toy(2, k == 2 ? 2 : 3, k, 3, gen);
      const Corpus corpus = to_corpus(toy);
      SamplerConfig config;
      config.num_topics = k;
      config.variant = variant;
      config.theta0 = 0.7;
      config.beta0 = 0.3;
      GibbsSampler sampler(corpus, config, Rng(5 + k));
      for (int s = 0; s < 3; ++s) sampler.sweep();
      for (int d = 0; d < 2; ++d) {
        for (int i = 0; i < corpus.documents[static_cast<std::size_t>(d)].size(); ++i) {
          Snapshot snap = snapshot(sampler.state());
          std::vector<double> lw;
          for (int t = 0; t < k; ++t) {
            snap.draws[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] = t;
            lw.push_back(oracle_joint(toy, snap.draws, snap.inversions, snap.rho, config));
          }
          const VectorXd expected = normalise(lw);
          sampler.begin_document(d);
          const VectorXd got = sampler.topic_draw_conditional(i);
          sampler.resample_topic_draw(i);
          sampler.end_document();
          REQUIRE(got.size() == k);
          for (int t = 0; t < k; ++t) CHECK(got(t) == doctest::Approx(expected(t)).epsilon(1e-10));
          CHECK(check_consistency(corpus, sampler.state(), config).empty());
        }
      }
    }
  }
}

TEST_CASE("inversion conditional matches enumeration") {
  std::mt19937_64 gen(22);
  for (Variant variant : {Variant::Full, Variant::Uniform}) {
    const int k = 3;
    const auto toy = random_toy(2, 4, k, 4, gen);
    const Corpus corpus = to_corpus(toy);
    SamplerConfig config;
    config.num_topics = k;
    config.variant = variant;
    GibbsSampler sampler(corpus, config, Rng(17));
    for (int s = 0; s < 4; ++s) sampler.sweep();
    for (int d = 0; d < 2; ++d) {
      for (int j = 0; j + 1 < k; ++j) {
        Snapshot snap = snapshot(sampler.state());
        std::vector<double> lw;
        for (int value = 0; value < k - j; ++value) {
          snap.inversions[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] = value;
          lw.push_back(oracle_joint(toy, snap.draws, snap.inversions, snap.rho, config));
        }
        const VectorXd expected = normalise(lw);
        sampler.begin_document(d);
        const VectorXd got = sampler.inversion_conditional(j);
        sampler.resample_inversion(j);
        sampler.end_document();
        REQUIRE(got.size() == k - j);
        for (int v = 0; v < k - j; ++v) CHECK(got(v) == doctest::Approx(expected(v)).epsilon(1e-10));
        CHECK(check_consistency(corpus, sampler.state(), config).empty());
      }
    }
  }
}

TEST_CASE("single-topic document: inversion conditional is the GMM prior") {
  oracle::ToyCorpus toy;
  toy.num_topics = 4;
  toy.vocab_size = 3;
  toy.docs = {{{0, 1}, {1}, {2, 2}}};
  const Corpus corpus = to_corpus(toy);
  for (Variant variant : {Variant::Full, Variant::Uniform}) {
    SamplerConfig config;
    config.num_topics = 4;
    config.variant = variant;
    config.rho0 = 0.8;
    GibbsSampler sampler(corpus, config, Rng(2));
    sampler.begin_document(0);
    // Force every draw onto one topic.
    while (true) {
      bool all_same = true;
      for (int i = 0; i < 3; ++i) {
        sampler.resample_topic_draw(i);
        all_same = all_same && sampler.state().documents[0].draws[static_cast<std::size_t>(i)] ==
                                   sampler.state().documents[0].draws[0];
      }
      if (all_same) break;
    }
    for (int j = 0; j < 3; ++j) {
      const VectorXd p = sampler.inversion_conditional(j);
      for (int v = 0; v < 4 - j; ++v) {
        const double expected = variant == Variant::Full ? std::exp(gmm_marginal_log_pmf(v, 0.8, 4, j)) : 1.0 / (4 - j);
        CHECK(p(v) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
    sampler.end_document();
  }
}

TEST_CASE("huge theta0 leaves only the likelihood") {
  std::mt19937_64 gen(5);
  const auto toy = random_toy(2, 3, 3, 4, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 3;
  config.theta0 = 1e12;
  GibbsSampler sampler(corpus, config, Rng(1));
  sampler.sweep();
  Snapshot snap = snapshot(sampler.state());
  std::vector<double> lw;
  for (int t = 0; t < 3; ++t) {
    snap.draws[0][1] = t;
    std::vector<std::vector<int>> z;
    for (std::size_t d = 0; d < 2; ++d) {
      z.push_back(oracle::layout(snap.draws[d], oracle::permutation_with_inversions(snap.inversions[d], 3)));
    }
    lw.push_back(oracle::log_words_given_z(toy, z, config.beta0));
  }
  const VectorXd expected = normalise(lw);
  sampler.begin_document(0);
  const VectorXd got = sampler.topic_draw_conditional(1);
  sampler.end_document();
  for (int t = 0; t < 3; ++t) CHECK(got(t) == doctest::Approx(expected(t)).epsilon(1e-6));
}

TEST_CASE("sweeps keep the state consistent and respect the cache work bound") {
  std::mt19937_64 gen(9);
  const auto toy = random_toy(5, 7, 4, 12, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 4;
  GibbsSampler sampler(corpus, config, Rng(44));
  for (int s = 0; s < 30; ++s) {
    for (int d = 0; d < corpus.num_documents(); ++d) {
      sampler.begin_document(d);
      const auto before = sampler.cache().paragraph_evaluations();
      const int n = corpus.documents[static_cast<std::size_t>(d)].size();
      for (int i = 0; i < n; ++i) sampler.resample_topic_draw(i);
      for (int j = 0; j < 3; ++j) sampler.resample_inversion(j);
      const auto work = sampler.cache().paragraph_evaluations() - before;
      CHECK(work <= static_cast<std::int64_t>(n) * (n + 1) / 2 * 4);
      sampler.end_document();
    }
    sampler.resample_dispersions();
    REQUIRE(check_consistency(corpus, sampler.state(), config).empty());
    CHECK(std::isfinite(sampler.joint_log_prob()));
    CHECK((sampler.state().rho.array() > 0.0).all());
  }
  CHECK_THROWS_AS(sampler.topic_draw_conditional(0), std::logic_error);
  sampler.begin_document(0);
  CHECK_THROWS_AS(sampler.begin_document(1), std::logic_error);
  CHECK_THROWS_AS(sampler.joint_log_prob(), std::logic_error);
  sampler.end_document();
  CHECK_THROWS_AS(sampler.end_document(), std::logic_error);
}

TEST_CASE("check_consistency detects corruption") {
  std::mt19937_64 gen(10);
  const auto toy = random_toy(3, 4, 3, 5, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 3;
  GibbsSampler sampler(corpus, config, Rng(3));
  sampler.sweep();
  ChainState st = sampler.state();
  CHECK(check_consistency(corpus, st, config).empty());
  ChainState broken = st;
  broken.documents[0].z[0] = (broken.documents[0].z[0] + 1) % 3;
  CHECK_FALSE(check_consistency(corpus, broken, config).empty());
  broken = st;
  broken.topic_draws(0) += 1;
  CHECK_FALSE(check_consistency(corpus, broken, config).empty());
  broken = st;
  broken.word_topic.add(1, corpus.documents[0].paragraphs[0].words);
  CHECK_FALSE(check_consistency(corpus, broken, config).empty());
}

TEST_CASE("dispersion updates") {
  SUBCASE("all-zero inversions push rho above the prior mode") {
    const auto toy = empty_toy(40, 2, 4);
    const Corpus corpus = to_corpus(toy);
    SamplerConfig config;
    config.num_topics = 4;
    config.rho0 = 1.0;
    config.nu0_scale = 0.1;
    GibbsSampler sampler(corpus, config, Rng(8));
    const GmmPrior& prior = sampler.prior();
    const int n = 6000;
    double mean = 0.0;
    for (int s = 0; s < n; ++s) {
      sampler.resample_dispersions();
      mean += sampler.state().rho(1);
    }
    mean /= n;
    const auto exact = oracle::rho_posterior_moments(prior.vj0(1) * prior.nu0, 40 + prior.nu0, 3);
    CHECK(mean > config.rho0);
    CHECK(mean == doctest::Approx(exact.mean).epsilon(0.05));
  }
  SUBCASE("uniform keeps rho at zero; full keeps it positive") {
    std::mt19937_64 gen(12);
    const auto toy = random_toy(3, 4, 3, 5, gen);
    const Corpus corpus = to_corpus(toy);
    SamplerConfig config;
    config.num_topics = 3;
    config.iterations = 20;
    config.variant = Variant::Uniform;
    run_chain(corpus, config, Rng(2), 0, [](const GibbsSampler& s) { CHECK(s.state().rho.isZero(0.0)); });
    config.variant = Variant::Full;
    run_chain(corpus, config, Rng(2), 0, [](const GibbsSampler& s) { CHECK((s.state().rho.array() > 0.0).all()); });
  }
}

TEST_CASE("constrained variant never inverts; a huge rho0 behaves alike") {
  std::mt19937_64 gen(13);
  const auto toy = random_toy(4, 6, 4, 6, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 4;
  config.iterations = 50;
  config.variant = Variant::Constrained;
  run_chain(corpus, config, Rng(1), 0, [&](const GibbsSampler& s) {
    for (const auto& ds : s.state().documents) CHECK(ds.inversions.total() == 0);
    CHECK(check_consistency(corpus, s.state(), config).empty());
  });
  config.variant = Variant::Full;
  config.rho0 = 45.0;
  config.nu0_scale = 1000.0;
  run_chain(corpus, config, Rng(1), 0, [&](const GibbsSampler& s) {
    for (const auto& ds : s.state().documents) CHECK(ds.inversions.total() == 0);
  });
}

TEST_CASE("likelihood-free runs sample the prior predictive of v") {
  const int k = 3;
  const auto toy = empty_toy(4, 2, k);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = k;
  config.iterations = 20000;
  config.rho0 = 1.0;
  config.nu0_scale = 0.5;
  std::vector<std::vector<double>> freq{std::vector<double>(3, 0.0), std::vector<double>(2, 0.0)};
  std::int64_t n = 0;
  run_chain(corpus, config, Rng(77), 0, [&](const GibbsSampler& s) {
    for (const auto& ds : s.state().documents) {
      for (int j = 0; j < 2; ++j) freq[static_cast<std::size_t>(j)][static_cast<std::size_t>(ds.inversions[j])] += 1.0;
    }
    ++n;
  });
  const double nu0 = config.nu0(4);
  for (int j = 0; j < 2; ++j) {
    double mass = 0.0;
    for (int v = 0; v < k - j; ++v) {
      // Marginalise the other coordinate by summing the joint.
      double p = 0.0;
      for (int other = 0; other < k - (1 - j); ++other) {
        std::vector<int> vv(2);
        vv[static_cast<std::size_t>(j)] = v;
        vv[static_cast<std::size_t>(1 - j)] = other;
        p += std::exp(oracle::log_gmm_integrated({vv}, k, config.rho0, nu0));
      }
      mass += p;
      CHECK(std::abs(freq[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] / (4.0 * static_cast<double>(n)) - p) <
            0.015);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("uniform variant on empty documents gives uniform inversions") {
  const int k = 4;
  const Corpus corpus = to_corpus(empty_toy(10, 1, k));
  SamplerConfig config;
  config.num_topics = k;
  config.iterations = 1500;
  config.variant = Variant::Uniform;
  std::vector<std::vector<double>> counts{std::vector<double>(4), std::vector<double>(3), std::vector<double>(2)};
  run_chain(corpus, config, Rng(4), 0, [&](const GibbsSampler& s) {
    for (const auto& ds : s.state().documents) {
      for (int j = 0; j < k - 1; ++j) counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(ds.inversions[j])] += 1;
    }
  });
  for (const auto& c : counts) {
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    const double e = total / static_cast<double>(c.size());
    double stat = 0.0;
    for (double o : c) stat += (o - e) * (o - e) / e;
    const boost::math::chi_squared dist(static_cast<double>(c.size() - 1));
    CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 0.001);
  }
}

TEST_CASE("determinism") {
  std::mt19937_64 gen(31);
  const Corpus corpus = to_corpus(random_toy(6, 5, 3, 8, gen));
  SamplerConfig config;
  config.num_topics = 3;
  config.iterations = 15;
  config.chains = 3;
  config.seed = 99;
  const auto a = run_chain(corpus, config, make_chain_rng(99, 1), 1);
  const auto b = run_chain(corpus, config, make_chain_rng(99, 1), 1);
  CHECK(a.state == b.state);
  const auto serial = run_chains(corpus, config, 1);
  const auto parallel = run_chains(corpus, config, 3);
  REQUIRE(serial.size() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(serial[static_cast<std::size_t>(c)].state == parallel[static_cast<std::size_t>(c)].state);
    CHECK(serial[static_cast<std::size_t>(c)].chain == c);
    CHECK(serial[static_cast<std::size_t>(c)].iteration == 15);
  }
  CHECK(serial[1].state == a.state);
  CHECK_FALSE(serial[0].state == serial[1].state);

  std::vector<double> trace;
  run_chain(corpus, config, Rng(1), 0, {}, &trace);
  CHECK(trace.size() == 15);
  for (double lp : trace) CHECK(std::isfinite(lp));
}

TEST_CASE("point estimates") {
  TopicWordCounts counts(2, 2, 0.1);
  counts.add(0, WordBag::from_ids(std::vector<int>{0, 0, 0}));
  const MatrixXd beta = estimate_beta(counts, 0.1);
  CHECK(beta(0, 0) == doctest::Approx(3.1 / 3.2).epsilon(1e-14));
  CHECK(beta(0, 1) == doctest::Approx(0.1 / 3.2).epsilon(1e-14));
  CHECK(beta(1, 0) == doctest::Approx(0.5));
  for (int k = 0; k < 2; ++k) CHECK(beta.row(k).sum() == doctest::Approx(1.0).epsilon(1e-12));

  VectorXi n(2);
  n << 7, 3;
  const VectorXd theta = estimate_theta(n, 0.1);
  CHECK(theta(0) == doctest::Approx(7.1 / 10.2).epsilon(1e-14));
  CHECK(theta(1) == doctest::Approx(3.1 / 10.2).epsilon(1e-14));
  CHECK(theta.sum() == doctest::Approx(1.0).epsilon(1e-12));
  const VectorXd flat = estimate_theta(VectorXi::Zero(4), 0.1);
  for (int k = 0; k < 4; ++k) CHECK(flat(k) == doctest::Approx(0.25));
}

TEST_CASE("label exchanges keep the clustering and the label-free terms") {
  std::mt19937_64 gen(21);
  const auto toy = random_toy(6, 6, 4, 10, gen);
  const Corpus corpus = to_corpus(toy);
  SamplerConfig config;
  config.num_topics = 4;
  config.relabel = false;
  // A nearly flat ordering prior so that exchanges are often accepted.
  config.rho0 = 0.01;
  GibbsSampler sampler(corpus, config, Rng(8));
  for (int s = 0; s < 5; ++s) sampler.sweep();

  auto label_free = [&](const Snapshot& s) {
    std::vector<std::vector<int>> z;
    for (const auto& ds : sampler.state().documents) z.push_back(ds.z);
    return oracle::log_words_given_z(toy, z, config.beta0) + oracle::log_draws(s.draws, 4, config.theta0);
  };
  // Paragraph pairs that share a topic, across the whole corpus.
  auto co_clustered = [&]() {
    std::vector<int> flat;
    for (const auto& ds : sampler.state().documents) flat.insert(flat.end(), ds.z.begin(), ds.z.end());
    std::vector<bool> same;
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i + 1; j < flat.size(); ++j) same.push_back(flat[i] == flat[j]);
    return same;
  };

  int accepted = 0;
  for (int round = 0; round < 50; ++round) {
    const double before = label_free(snapshot(sampler.state()));
    const auto pairs = co_clustered();
    accepted += sampler.relabel_topics();
    REQUIRE(check_consistency(corpus, sampler.state(), config).empty());
    CHECK(label_free(snapshot(sampler.state())) == doctest::Approx(before).epsilon(1e-12));
    CHECK(co_clustered() == pairs);
  }
  CHECK(accepted > 0);

  config.variant = Variant::Uniform;
  GibbsSampler uniform(corpus, config, Rng(8));
  CHECK(uniform.relabel_topics() == 0);
}
