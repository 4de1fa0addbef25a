#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permtopic/io.hpp"

using namespace permtopic;
using json = nlohmann::json;

namespace {

struct Fixture {
  SyntheticCorpus synth;
  PosteriorSample sample;

  Fixture() {
    SynthConfig sc;
    sc.num_topics = 3;
    sc.num_documents = 6;
    sc.vocab_size = 30;
    Rng rng(4);
    synth = generate_synthetic(sc, rng);
    SamplerConfig config;
    config.num_topics = 3;
    config.iterations = 5;
    config.seed = 123;
    config.variant = Variant::Full;
    sample = run_chain(synth.corpus, config, make_chain_rng(config.seed, 2), 2);
  }
};

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("checksum_hex") {
  CHECK(checksum_hex(0) == "0000000000000000");
  CHECK(checksum_hex(0xdeadbeefULL) == "00000000deadbeef");
  CHECK(checksum_hex(~0ULL) == "ffffffffffffffff");
}

TEST_CASE("sample files round trip") {
  const Fixture f;
  std::stringstream buf;
  write_sample(buf, f.sample, f.synth.corpus, "vocab.txt");
  const std::string text = buf.str();
  const auto records = lines(text);
  REQUIRE(records.size() == 1 + 6 + 3);
  CHECK(records[0]["format"] == "permtopic-sample");
  CHECK(records[0]["version"] == kSampleFormatVersion);
  CHECK(records[0]["vocabulary"]["checksum"] == checksum_hex(f.synth.corpus.vocabulary.checksum()));

  const SampleFile back = read_sample(buf);
  CHECK(back.sample.state == f.sample.state);
  CHECK(back.sample.chain == 2);
  CHECK(back.sample.iteration == 5);
  CHECK(back.sample.config.seed == 123);
  CHECK(back.sample.config.variant == Variant::Full);
  CHECK(back.vocabulary_file == "vocab.txt");
  CHECK(back.vocabulary_size == 30);
  CHECK(back.vocabulary_checksum == f.synth.corpus.vocabulary.checksum());
  CHECK(back.document_ids.size() == 6);
  CHECK(back.document_ids[0] == f.synth.corpus.documents[0].id);
  CHECK(check_consistency(f.synth.corpus, back.sample.state, back.sample.config).empty());

  // Rewriting the parsed sample reproduces the file byte for byte.
  std::ostringstream again;
  write_sample(again, back.sample, f.synth.corpus, "vocab.txt");
  CHECK(again.str() == text);
}

TEST_CASE("malformed sample files") {
  const Fixture f;
  std::ostringstream buf;
  write_sample(buf, f.sample, f.synth.corpus, "vocab.txt");
  const std::string text = buf.str();

  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_sample(in);
  };
  CHECK_THROWS_AS(read(""), FormatError);
  CHECK_THROWS_AS(read(text.substr(0, text.size() / 2)), FormatError);
  CHECK_THROWS_AS(read("not json\n"), FormatError);
  CHECK_THROWS_AS(read(R"({"format":"other"})" "\n"), FormatError);

  auto records = lines(text);
  std::string rebuilt;
  records[0]["version"] = 99;
  for (const auto& r : records) rebuilt += r.dump() + "\n";
  CHECK_THROWS_AS(read(rebuilt), FormatError);

  records = lines(text);
  records[1]["v"] = std::vector<int>{5, 0};
  rebuilt.clear();
  for (const auto& r : records) rebuilt += r.dump() + "\n";
  CHECK_THROWS_AS(read(rebuilt), FormatError);

  records = lines(text);
  records.back()["total"] = records.back()["total"].get<int>() + 1;
  rebuilt.clear();
  for (const auto& r : records) rebuilt += r.dump() + "\n";
  CHECK_THROWS_AS(read(rebuilt), FormatError);
}

TEST_CASE("task outputs") {
  const Fixture f;
  const Alignment a = extract_alignment(f.sample);
  std::ostringstream al;
  write_alignment(al, a, f.synth.corpus);
  const auto arecs = lines(al.str());
  CHECK(static_cast<std::int64_t>(arecs.size()) == f.synth.corpus.num_paragraphs());
  CHECK(arecs[0]["doc"] == f.synth.corpus.documents[0].id);
  CHECK(arecs[0]["paragraph"] == 0);
  CHECK(arecs[0]["cluster"] == a.labels[0][0]);

  std::vector<Segmentation> segs;
  for (const auto& z : a.labels) segs.push_back(extract_segmentation(z));
  std::ostringstream sg;
  write_segmentation(sg, segs, f.synth.corpus);
  const auto srecs = lines(sg.str());
  REQUIRE(srecs.size() == 6);
  CHECK(srecs[1]["boundaries"].get<std::vector<int>>() == segs[1].boundaries());
  CHECK(srecs[1]["lengths"].get<std::vector<int>>() == segs[1].lengths);

  Ordering o;
  o.order = {1, 0};
  o.ranks = {1, 0};
  o.topics = {2, 0};
  std::ostringstream od;
  write_ordering(od, "t1", o, -1.0);
  write_ordering(od, "t2", o, std::nullopt);
  const auto orecs = lines(od.str());
  CHECK(orecs[0]["tau"] == -1.0);
  CHECK(orecs[1]["tau"].is_null());
  CHECK(orecs[0]["rank"].get<std::vector<int>>() == o.ranks);
  CHECK(orecs[0]["topic"].get<std::vector<int>>() == o.topics);
}
