#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/eval.hpp"
#include "permtopic/io.hpp"
#include "permtopic/sampler.hpp"
#include "permtopic/tasks.hpp"

#ifndef PERMTOPIC_VERSION
#define PERMTOPIC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace permtopic;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitConsistency = 4;
constexpr const char* kWorkersEnv = "PERMTOPIC_WORKERS";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("error writing " + path.string());
}

int default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used == std::string(env).size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer, got '" + env + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CorpusFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "jsonl") return CorpusFormat::JsonLines;
  if (flag == "text") return CorpusFormat::PlainText;
  return format_from_path(path);
}

std::string format_name(CorpusFormat f) { return f == CorpusFormat::JsonLines ? "jsonl" : "text"; }

// ---------------------------------------------------------------- model dir

struct Model {
  json manifest;
  Vocabulary vocabulary;
  std::vector<SampleFile> chains;
};

Model load_model(const fs::path& dir) {
  Model m;
  {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw IoError("cannot open " + (dir / "manifest.json").string());
    try {
      m.manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw FormatError("manifest.json: " + std::string(e.what()));
    }
  }
  const auto vocab_file = dir / m.manifest.at("vocabulary").get<std::string>();
  std::ifstream vin(vocab_file);
  if (!vin) throw IoError("cannot open " + vocab_file.string());
  m.vocabulary = Vocabulary::load(vin);
  for (const auto& c : m.manifest.at("chains")) {
    const auto path = dir / c.at("file").get<std::string>();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
      m.chains.push_back(read_sample(in));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    if (m.chains.back().vocabulary_checksum != m.vocabulary.checksum()) {
      throw ConsistencyError(path.string() + ": vocabulary checksum does not match " + vocab_file.string());
    }
  }
  if (m.chains.empty()) throw FormatError("manifest lists no chains");
  return m;
}

// Reloads the training corpus and checks it is the one the model was fit to.
LoadedCorpus load_training_corpus(const Model& model, const std::string& path, const std::string& format_flag) {
  LoadOptions opts;
  opts.min_count = model.manifest.at("corpus").at("min_count").get<int>();
  LoadedCorpus loaded = load_corpus(path, resolve_format(format_flag, path), opts);
  const auto& first = model.chains.front();
  if (loaded.corpus.vocabulary.checksum() != first.vocabulary_checksum) {
    throw ConsistencyError("vocabulary checksum mismatch: corpus " + checksum_hex(loaded.corpus.vocabulary.checksum()) +
                           ", model " + checksum_hex(first.vocabulary_checksum));
  }
  for (const auto& chain : model.chains) {
    std::vector<std::string> ids;
    for (const auto& doc : loaded.corpus.documents) ids.push_back(doc.id);
    if (ids != chain.document_ids) throw ConsistencyError("document ids differ between corpus and model");
    const std::string problem = check_consistency(loaded.corpus, chain.sample.state, chain.sample.config);
    if (!problem.empty()) throw ConsistencyError("model does not fit corpus: " + problem);
  }
  return loaded;
}

void emit_report(const fs::path& path, const MetricTable& table, const std::string& unavailable) {
  auto out = open_out(path);
  if (unavailable.empty()) {
    table.write(out);
    table.write(std::cout);
  } else {
    out << "# " << table.title << "\nmetrics unavailable: " << unavailable << '\n';
    std::cout << "metrics unavailable: " << unavailable << '\n';
  }
  finish(out, path);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string corpus;
  std::string format = "auto";
  int min_count = 2;
  SamplerConfig config;
  std::string variant = "full";
  bool no_relabel = false;
  int workers = 0;
  std::string out;
};

int run_train(TrainArgs a) {
  a.config.variant = parse_variant(a.variant);
  a.config.relabel = !a.no_relabel;
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (a.min_count < 1) throw ConfigError("--min-count must be >= 1");
  const int workers = a.workers > 0 ? a.workers : default_workers();

  const auto t0 = std::chrono::steady_clock::now();
  const CorpusFormat format = resolve_format(a.format, a.corpus);
  LoadOptions opts;
  opts.min_count = a.min_count;
  const LoadedCorpus loaded = load_corpus(a.corpus, format, opts);
  const double load_seconds = seconds_since(t0);
  const Corpus& corpus = loaded.corpus;

  const fs::path dir(a.out);
  make_dir(dir);
  {
    auto out = open_out(dir / "load_report.txt");
    loaded.report.write(out);
    finish(out, dir / "load_report.txt");
    auto vout = open_out(dir / "vocab.txt");
    corpus.vocabulary.save(vout);
    finish(vout, dir / "vocab.txt");
  }

  const auto t1 = std::chrono::steady_clock::now();
  const auto samples = run_chains(corpus, a.config, workers);
  const double sample_seconds = seconds_since(t1);

  json chains = json::array();
  for (const auto& s : samples) {
    const std::string problem = check_consistency(corpus, s.state, s.config);
    if (!problem.empty()) throw ConsistencyError("chain " + std::to_string(s.chain) + ": " + problem);
    const std::string name = "chain" + std::to_string(s.chain) + ".jsonl";
    auto out = open_out(dir / name);
    write_sample(out, s, corpus, "vocab.txt");
    finish(out, dir / name);
    chains.push_back({{"chain", s.chain}, {"file", name}, {"seed", a.config.seed}, {"stream", s.chain}});
  }

  json config{{"num_topics", a.config.num_topics}, {"iterations", a.config.iterations},
              {"chains", a.config.chains},         {"theta0", a.config.theta0},
              {"beta0", a.config.beta0},           {"rho0", a.config.rho0},
              {"nu0_scale", a.config.nu0_scale},   {"nu0", a.config.nu0(corpus.num_documents())},
              {"variant", to_string(a.config.variant)}, {"seed", a.config.seed},
              {"relabel", a.config.relabel}};
  const json manifest{
      {"tool", "permtopic"},
      {"version", PERMTOPIC_VERSION},
      {"command", "train"},
      {"corpus",
       {{"path", a.corpus},
        {"format", format_name(format)},
        {"checksum", checksum_hex(file_checksum(a.corpus))},
        {"min_count", a.min_count},
        {"documents", corpus.num_documents()},
        {"paragraphs", corpus.num_paragraphs()}}},
      {"vocabulary", "vocab.txt"},
      {"config", config},
      {"chains", chains},
      {"workers", workers},
      {"timings", {{"load_seconds", load_seconds}, {"sampling_seconds", sample_seconds}}}};
  auto out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  finish(out, dir / "manifest.json");

  std::cout << "trained " << samples.size() << " chain(s), K=" << a.config.num_topics << ", "
            << a.config.iterations << " iterations on " << corpus.num_documents() << " documents in "
            << sample_seconds << " s; wrote " << dir.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- align / segment

struct TaskArgs {
  std::string model;
  std::string corpus;
  std::string format = "auto";
  std::string out;
};

int run_align(const TaskArgs& a) {
  const Model model = load_model(a.model);
  const LoadedCorpus loaded = load_training_corpus(model, a.corpus, a.format);
  const fs::path dir(a.out);
  make_dir(dir);

  const bool have_ref = loaded.headings.complete();
  const auto ref = have_ref ? heading_labels(loaded.headings) : std::vector<std::vector<std::string>>{};
  std::vector<double> recall, precision, f;
  for (const auto& chain : model.chains) {
    const Alignment alignment = extract_alignment(chain.sample);
    const std::string name = "align_chain" + std::to_string(chain.sample.chain) + ".jsonl";
    auto out = open_out(dir / name);
    write_alignment(out, alignment, loaded.corpus);
    finish(out, dir / name);
    if (have_ref) {
      const AlignmentScores s = alignment_scores(alignment, ref);
      recall.push_back(s.recall);
      precision.push_back(s.precision);
      f.push_back(s.f);
    }
  }
  MetricTable table;
  table.title = "alignment";
  table.add("recall", recall);
  table.add("precision", precision);
  table.add("f", f);
  emit_report(dir / "align_report.txt", table, have_ref ? "" : "corpus has no section headings");
  return 0;
}

int run_segment(const TaskArgs& a) {
  const Model model = load_model(a.model);
  const LoadedCorpus loaded = load_training_corpus(model, a.corpus, a.format);
  const fs::path dir(a.out);
  make_dir(dir);

  const bool have_ref = loaded.headings.complete();
  const auto ref = have_ref ? heading_labels(loaded.headings) : std::vector<std::vector<std::string>>{};
  std::vector<double> pks, wds, hyp_segments, ref_segments;
  for (const auto& chain : model.chains) {
    std::vector<Segmentation> segs;
    for (const auto& ds : chain.sample.state.documents) segs.push_back(extract_segmentation(ds.z));
    const std::string name = "segment_chain" + std::to_string(chain.sample.chain) + ".jsonl";
    auto out = open_out(dir / name);
    write_segmentation(out, segs, loaded.corpus);
    finish(out, dir / name);
    if (!have_ref) continue;
    double pk_sum = 0.0, wd_sum = 0.0, hyp = 0.0, refs = 0.0;
    int scored = 0;
    for (std::size_t d = 0; d < segs.size(); ++d) {
      const Segmentation r = reference_segmentation(ref[d]);
      hyp += segs[d].num_segments();
      refs += r.num_segments();
      // Window metrics need at least two paragraphs.
      if (r.num_units() < 2) continue;
      const int w = std::min(default_window(r), r.num_units() - 1);
      pk_sum += pk(segs[d], r, w);
      wd_sum += window_diff(segs[d], r, w);
      ++scored;
    }
    const double docs = static_cast<double>(segs.size());
    pks.push_back(scored ? pk_sum / scored : 0.0);
    wds.push_back(scored ? wd_sum / scored : 0.0);
    hyp_segments.push_back(hyp / docs);
    ref_segments.push_back(refs / docs);
  }
  MetricTable table;
  table.title = "segmentation";
  table.add("pk", pks);
  table.add("windowdiff", wds);
  table.add("segments", hyp_segments);
  table.add("ref_segments", ref_segments);
  emit_report(dir / "segment_report.txt", table, have_ref ? "" : "corpus has no section headings");
  return 0;
}

// ---------------------------------------------------------------- order

// Sections are runs of equal headings when every paragraph has one, else
// single paragraphs.
std::vector<WordBag> sections_of(const Document& doc, const std::vector<std::optional<std::string>>& headings,
                                 int vocab) {
  const bool headed = std::all_of(headings.begin(), headings.end(), [](const auto& h) { return h.has_value(); }) &&
                      headings.size() == doc.paragraphs.size();
  std::vector<WordBag> out;
  for (std::size_t start = 0; start < doc.paragraphs.size();) {
    std::size_t end = start + 1;
    if (headed) {
      while (end < doc.paragraphs.size() && headings[end] == headings[start]) ++end;
    }
    std::vector<std::int64_t> dense(static_cast<std::size_t>(vocab), 0);
    for (std::size_t p = start; p < end; ++p) {
      for (const auto& [w, c] : doc.paragraphs[p].words.entries) dense[static_cast<std::size_t>(w)] += c;
    }
    out.push_back(WordBag::from_counts(dense));
    start = end;
  }
  return out;
}

int run_order(const TaskArgs& a) {
  const Model model = load_model(a.model);
  LoadOptions opts;
  opts.fixed_vocabulary = &model.vocabulary;
  const LoadedCorpus test = load_corpus(a.corpus, resolve_format(a.format, a.corpus), opts);
  const fs::path dir(a.out);
  make_dir(dir);
  const int vocab = model.vocabulary.size();

  std::vector<std::vector<WordBag>> sections;
  std::vector<bool> defined;
  for (std::size_t d = 0; d < test.corpus.documents.size(); ++d) {
    const Document& doc = test.corpus.documents[d];
    sections.push_back(sections_of(doc, test.headings.per_document[d], vocab));
    std::int64_t tokens = 0;
    for (const auto& p : doc.paragraphs) tokens += p.words.total;
    if (tokens == 0) {
      std::cerr << "warning: document " << doc.id << " is empty after vocabulary filtering; tau undefined\n";
      defined.push_back(false);
    } else if (sections.back().size() < 2) {
      std::cerr << "warning: document " << doc.id << " has a single section; tau undefined\n";
      defined.push_back(false);
    } else {
      defined.push_back(true);
    }
  }

  std::vector<double> taus, counts;
  for (const auto& chain : model.chains) {
    const TopicModelEstimate estimate = TopicModelEstimate::from_sample(chain.sample);
    const std::string name = "order_chain" + std::to_string(chain.sample.chain) + ".jsonl";
    auto out = open_out(dir / name);
    double sum = 0.0;
    int n = 0;
    for (std::size_t d = 0; d < sections.size(); ++d) {
      const Ordering o = order_sections(sections[d], estimate);
      std::optional<double> tau;
      if (defined[d]) {
        std::vector<int> reference(sections[d].size());
        std::iota(reference.begin(), reference.end(), 0);
        tau = kendall_tau_metric(o.order, reference);
        sum += *tau;
        ++n;
      }
      write_ordering(out, test.corpus.documents[d].id, o, tau);
    }
    finish(out, dir / name);
    taus.push_back(n ? sum / n : 0.0);
    counts.push_back(n);
  }
  MetricTable table;
  table.title = "ordering";
  table.add("tau", taus);
  table.add("documents", counts);
  const bool any = !counts.empty() && counts.front() > 0;
  emit_report(dir / "order_report.txt", table, any ? "" : "no test document has two or more sections");
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  SynthConfig config;
  double nu0_scale = 0.1;
  int heldout = 0;
  bool canonical = false;
  std::string out;
};

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

json truth_json(const SyntheticCorpus& s) {
  json docs = json::array();
  for (std::size_t d = 0; d < s.z.size(); ++d) {
    const auto v = s.inversions[d].counts();
    docs.push_back({{"id", s.corpus.documents[d].id},
                    {"t", s.draws[d]},
                    {"v", std::vector<int>(v.begin(), v.end())},
                    {"z", s.z[d]}});
  }
  return docs;
}

void write_synthetic(const fs::path& path, const SyntheticCorpus& s) {
  auto out = open_out(path);
  const Headings headings = s.truth_headings();
  write_corpus_jsonl(out, s.corpus, &headings);
  finish(out, path);
}

int run_synth(SynthArgs a) {
  if (!(a.nu0_scale > 0.0)) throw ConfigError("--nu0-scale must be positive");
  if (a.heldout < 0) throw ConfigError("--heldout must be >= 0");
  a.config.nu0 = a.nu0_scale * a.config.num_documents;
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const fs::path dir(a.out);
  make_dir(dir);
  Rng rng(a.config.seed);
  const SyntheticCorpus train = generate_synthetic(a.config, rng);
  write_synthetic(dir / "corpus.jsonl", train);

  const json config{{"num_topics", a.config.num_topics}, {"num_documents", a.config.num_documents},
                    {"min_paragraphs", a.config.min_paragraphs}, {"max_paragraphs", a.config.max_paragraphs},
                    {"min_words", a.config.min_words},     {"max_words", a.config.max_words},
                    {"vocab_size", a.config.vocab_size},   {"theta0", a.config.theta0},
                    {"beta0", a.config.beta0},             {"rho0", a.config.rho0},
                    {"nu0", a.config.nu0},                 {"seed", a.config.seed}};
  json truth{{"tool", "permtopic"},
             {"version", PERMTOPIC_VERSION},
             {"config", config},
             {"rho", std::vector<double>(train.model.rho.begin(), train.model.rho.end())},
             {"theta", std::vector<double>(train.model.theta.begin(), train.model.theta.end())},
             {"beta", matrix_json(train.model.beta)},
             {"documents", truth_json(train)}};
  if (a.heldout > 0) {
    const SyntheticCorpus held = sample_documents(a.config, train.model, a.heldout, a.canonical, rng, "heldout");
    write_synthetic(dir / "heldout.jsonl", held);
    truth["heldout"] = {{"canonical_order", a.canonical}, {"documents", truth_json(held)}};
  }
  auto out = open_out(dir / "truth.json");
  out << truth.dump() << '\n';
  finish(out, dir / "truth.json");
  std::cout << "wrote " << a.config.num_documents << " documents";
  if (a.heldout > 0) std::cout << " and " << a.heldout << " held-out documents";
  std::cout << " to " << dir.string() << '\n';
  return 0;
}

void add_sampler_flags(CLI::App* cmd, TrainArgs& a) {
  cmd->add_option("--topics,-K", a.config.num_topics, "Number of topics")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--iters", a.config.iterations, "Gibbs sweeps per chain")->capture_default_str();
  cmd->add_option("--chains", a.config.chains, "Independent chains")->capture_default_str();
  cmd->add_option("--theta0", a.config.theta0, "Dirichlet prior on topic draws")->capture_default_str();
  cmd->add_option("--beta0", a.config.beta0, "Dirichlet prior on topic words")->capture_default_str();
  cmd->add_option("--rho0", a.config.rho0, "Prior dispersion")->capture_default_str();
  cmd->add_option("--nu0-scale", a.config.nu0_scale, "Prior strength as a multiple of the document count")
      ->capture_default_str();
  cmd->add_option("--variant", a.variant, "Ordering model")
      ->check(CLI::IsMember({"full", "constrained", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--seed", a.config.seed, "Random seed")->capture_default_str();
  cmd->add_flag("--no-relabel", a.no_relabel, "Disable label-exchange moves");
}

void add_task_flags(CLI::App* cmd, TaskArgs& a, const char* corpus_help) {
  cmd->add_option("--model,-m", a.model, "Directory written by train")->required();
  cmd->add_option("corpus", a.corpus, corpus_help)->required();
  cmd->add_option("--format", a.format, "Corpus format")->check(CLI::IsMember({"auto", "jsonl", "text"}));
  cmd->add_option("--out,-o", a.out, "Output directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic model with a latent ordering over document sections"};
  app.set_version_flag("--version", PERMTOPIC_VERSION);
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit the model and write posterior samples");
  train_cmd->add_option("corpus", train.corpus, "Corpus file (.jsonl or plain text)")->required();
  train_cmd->add_option("--format", train.format, "Corpus format")->check(CLI::IsMember({"auto", "jsonl", "text"}));
  train_cmd->add_option("--min-count", train.min_count, "Drop tokens seen fewer times")->capture_default_str();
  add_sampler_flags(train_cmd, train);
  train_cmd->add_option("--workers", train.workers,
                        std::string("Worker threads (default: $") + kWorkersEnv + " or the core count)");
  train_cmd->add_option("--out,-o", train.out, "Output directory")->required();

  TaskArgs align, segment, order;
  auto* align_cmd = app.add_subcommand("align", "Cluster paragraphs across documents");
  add_task_flags(align_cmd, align, "Training corpus");
  auto* segment_cmd = app.add_subcommand("segment", "Split documents into topic segments");
  add_task_flags(segment_cmd, segment, "Training corpus");
  auto* order_cmd = app.add_subcommand("order", "Predict section order for test documents");
  add_task_flags(order_cmd, order, "Test corpus");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  synth_cmd->add_option("--topics,-K", synth.config.num_topics, "Number of topics")->capture_default_str();
  synth_cmd->add_option("--docs", synth.config.num_documents, "Documents")->capture_default_str();
  synth_cmd->add_option("--vocab", synth.config.vocab_size, "Vocabulary size")->capture_default_str();
  synth_cmd->add_option("--min-paragraphs", synth.config.min_paragraphs)->capture_default_str();
  synth_cmd->add_option("--max-paragraphs", synth.config.max_paragraphs)->capture_default_str();
  synth_cmd->add_option("--min-words", synth.config.min_words)->capture_default_str();
  synth_cmd->add_option("--max-words", synth.config.max_words)->capture_default_str();
  synth_cmd->add_option("--theta0", synth.config.theta0)->capture_default_str();
  synth_cmd->add_option("--beta0", synth.config.beta0)->capture_default_str();
  synth_cmd->add_option("--rho0", synth.config.rho0)->capture_default_str();
  synth_cmd->add_option("--nu0-scale", synth.nu0_scale)->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed)->capture_default_str();
  synth_cmd->add_option("--heldout", synth.heldout, "Extra documents written to heldout.jsonl")
      ->capture_default_str();
  synth_cmd->add_flag("--canonical", synth.canonical, "Held-out documents follow the canonical order");
  synth_cmd->add_option("--out,-o", synth.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*align_cmd) return run_align(align);
    if (*segment_cmd) return run_segment(segment);
    if (*order_cmd) return run_order(order);
    if (*synth_cmd) return run_synth(synth);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitIo;
  } catch (const json::exception& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
