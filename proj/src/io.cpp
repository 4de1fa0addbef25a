#include "permtopic/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace permtopic {

namespace {

using json = nlohmann::json;

json config_to_json(const SamplerConfig& c) {
  return json{{"num_topics", c.num_topics}, {"iterations", c.iterations}, {"chains", c.chains},
              {"theta0", c.theta0},         {"beta0", c.beta0},           {"rho0", c.rho0},
              {"nu0_scale", c.nu0_scale},   {"variant", to_string(c.variant)},
              {"seed", c.seed},             {"relabel", c.relabel}};
}

SamplerConfig config_from_json(const json& j) {
  SamplerConfig c;
  c.num_topics = j.at("num_topics").get<int>();
  c.iterations = j.at("iterations").get<int>();
  c.chains = j.at("chains").get<int>();
  c.theta0 = j.at("theta0").get<double>();
  c.beta0 = j.at("beta0").get<double>();
  c.rho0 = j.at("rho0").get<double>();
  c.nu0_scale = j.at("nu0_scale").get<double>();
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.seed = j.at("seed").get<std::uint64_t>();
  c.relabel = j.value("relabel", true);
  return c;
}

json next_record(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(std::string("sample file truncated before ") + what);
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed ") + what + " record: " + e.what());
  }
}

}  // namespace

std::string checksum_hex(std::uint64_t checksum) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

void write_sample(std::ostream& out, const PosteriorSample& sample, const Corpus& corpus,
                  const std::string& vocabulary_file) {
  const ChainState& st = sample.state;
  const int k = sample.config.num_topics;
  json header{{"format", "permtopic-sample"},
              {"version", kSampleFormatVersion},
              {"config", config_to_json(sample.config)},
              {"chain", sample.chain},
              {"iteration", sample.iteration},
              {"vocabulary",
               {{"file", vocabulary_file},
                {"size", corpus.vocabulary.size()},
                {"checksum", checksum_hex(corpus.vocabulary.checksum())}}},
              {"num_documents", corpus.num_documents()},
              {"num_topics", k},
              {"rho", std::vector<double>(st.rho.data(), st.rho.data() + st.rho.size())},
              {"topic_draws", std::vector<std::int64_t>(st.topic_draws.data(), st.topic_draws.data() + st.topic_draws.size())}};
  out << header.dump() << '\n';
  for (std::size_t d = 0; d < st.documents.size(); ++d) {
    const auto& ds = st.documents[d];
    json rec{{"doc", d},
             {"id", corpus.documents[d].id},
             {"t", ds.draws},
             {"v", std::vector<int>(ds.inversions.counts().begin(), ds.inversions.counts().end())},
             {"z", ds.z}};
    out << rec.dump() << '\n';
  }
  for (int t = 0; t < k; ++t) {
    json words = json::array();
    for (int w = 0; w < st.word_topic.vocab_size(); ++w) {
      if (const auto c = st.word_topic.count(t, w); c > 0) words.push_back({w, c});
    }
    out << json{{"topic", t}, {"total", st.word_topic.total(t)}, {"words", std::move(words)}}.dump() << '\n';
  }
}

SampleFile read_sample(std::istream& in) {
  SampleFile file;
  const json header = next_record(in, "header");
  try {
    if (header.at("format").get<std::string>() != "permtopic-sample") throw FormatError("not a sample file");
    if (header.at("version").get<int>() != kSampleFormatVersion) throw FormatError("unsupported sample file version");
    auto& sample = file.sample;
    sample.config = config_from_json(header.at("config"));
    sample.chain = header.at("chain").get<int>();
    sample.iteration = header.at("iteration").get<int>();
    const auto& vocab = header.at("vocabulary");
    file.vocabulary_file = vocab.at("file").get<std::string>();
    file.vocabulary_size = vocab.at("size").get<int>();
    file.vocabulary_checksum = std::stoull(vocab.at("checksum").get<std::string>(), nullptr, 16);
    const int num_docs = header.at("num_documents").get<int>();
    const int k = header.at("num_topics").get<int>();
    if (k != sample.config.num_topics) throw FormatError("num_topics disagrees with config");

    const auto rho = header.at("rho").get<std::vector<double>>();
    sample.state.rho = Eigen::Map<const VectorXd>(rho.data(), static_cast<Eigen::Index>(rho.size()));
    const auto draws = header.at("topic_draws").get<std::vector<std::int64_t>>();
    if (static_cast<int>(draws.size()) != k) throw FormatError("topic_draws has wrong length");
    sample.state.topic_draws = Eigen::Map<const VectorXi>(draws.data(), k);

    for (int d = 0; d < num_docs; ++d) {
      const json rec = next_record(in, "document");
      if (rec.at("doc").get<int>() != d) throw FormatError("document records out of order");
      DocumentState ds;
      ds.draws = rec.at("t").get<std::vector<int>>();
      ds.inversions = InversionVector(rec.at("v").get<std::vector<int>>(), k);
      ds.z = rec.at("z").get<std::vector<int>>();
      file.document_ids.push_back(rec.at("id").get<std::string>());
      sample.state.documents.push_back(std::move(ds));
    }
    sample.state.word_topic = TopicWordCounts(k, file.vocabulary_size, sample.config.beta0);
    for (int t = 0; t < k; ++t) {
      const json rec = next_record(in, "topic");
      if (rec.at("topic").get<int>() != t) throw FormatError("topic records out of order");
      std::vector<std::int64_t> dense(static_cast<std::size_t>(file.vocabulary_size), 0);
      for (const auto& pair : rec.at("words")) {
        const int w = pair.at(0).get<int>();
        if (w < 0 || w >= file.vocabulary_size) throw FormatError("word id out of range");
        dense[static_cast<std::size_t>(w)] = pair.at(1).get<std::int64_t>();
      }
      sample.state.word_topic.add(t, WordBag::from_counts(dense));
      if (sample.state.word_topic.total(t) != rec.at("total").get<std::int64_t>()) {
        throw FormatError("topic total disagrees with word counts");
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed sample file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid sample file: ") + e.what());
  }
  return file;
}

void write_alignment(std::ostream& out, const Alignment& alignment, const Corpus& corpus) {
  for (std::size_t d = 0; d < alignment.labels.size(); ++d) {
    for (std::size_t p = 0; p < alignment.labels[d].size(); ++p) {
      out << json{{"doc", corpus.documents[d].id}, {"paragraph", p}, {"cluster", alignment.labels[d][p]}}.dump()
          << '\n';
    }
  }
}

void write_segmentation(std::ostream& out, const std::vector<Segmentation>& segmentations, const Corpus& corpus) {
  for (std::size_t d = 0; d < segmentations.size(); ++d) {
    out << json{{"doc", corpus.documents[d].id},
                {"boundaries", segmentations[d].boundaries()},
                {"lengths", segmentations[d].lengths}}
               .dump()
        << '\n';
  }
}

void write_ordering(std::ostream& out, const std::string& doc_id, const Ordering& ordering,
                    const std::optional<double>& tau) {
  json rec{{"doc", doc_id}, {"rank", ordering.ranks}, {"topic", ordering.topics}};
  rec["tau"] = tau ? json(*tau) : json(nullptr);
  out << rec.dump() << '\n';
}

}  // namespace permtopic
