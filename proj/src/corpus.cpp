#include "permtopic/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace permtopic {

namespace {

using json = nlohmann::json;

bool is_separator(char32_t cp) {
  if (cp < 0x80) {
    return !((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'));
  }
  return (cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 || (cp >= 0x2000 && cp <= 0x2BFF) ||
         (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFE30 && cp <= 0xFE4F) ||
         (cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0x1F000 && cp <= 0x1FAFF) || cp == 0xFFFD;
}

// Simple case folding for Latin-1, Latin Extended-A, Greek and Cyrillic.
char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137 && cp != 0x130) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

// Decodes one code point; malformed bytes decode to U+FFFD and advance by 1.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(pos);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + static_cast<std::size_t>(extra) >= s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const unsigned char c = byte(pos + static_cast<std::size_t>(i));
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

struct RawParagraph {
  std::string text;
  std::optional<std::string> heading;
  std::vector<std::string> tokens;
};

struct RawDocument {
  std::string id;
  std::vector<RawParagraph> paragraphs;
};

std::string location(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

std::vector<RawDocument> read_jsonl(std::istream& in, const std::string& source) {
  std::vector<RawDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(location(source, line_no) + ": malformed JSON: " + e.what());
    }
    RawDocument doc;
    if (record.contains("id") && record["id"].is_string()) {
      doc.id = record["id"].get<std::string>();
    } else if (record.contains("id") && record["id"].is_number_integer()) {
      doc.id = std::to_string(record["id"].get<long long>());
    } else {
      throw CorpusError(location(source, line_no) + ": record has no string \"id\"");
    }
    const std::string where = location(source, line_no) + " (document " + doc.id + ")";
    if (!record.contains("paragraphs") || !record["paragraphs"].is_array()) {
      throw CorpusError(where + ": missing \"paragraphs\" array");
    }
    for (const auto& p : record["paragraphs"]) {
      RawParagraph para;
      if (p.is_string()) {
        para.text = p.get<std::string>();
      } else if (p.is_object() && p.contains("text") && p["text"].is_string()) {
        para.text = p["text"].get<std::string>();
        if (p.contains("heading") && !p["heading"].is_null()) {
          if (!p["heading"].is_string()) throw CorpusError(where + ": heading must be a string");
          para.heading = p["heading"].get<std::string>();
        }
      } else {
        throw CorpusError(where + ": paragraph needs a string \"text\"");
      }
      doc.paragraphs.push_back(std::move(para));
    }
    if (doc.paragraphs.empty()) throw CorpusError(where + ": document has zero paragraphs");
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> read_plain(std::istream& in, const std::string& source) {
  std::vector<RawDocument> docs;
  RawDocument current;
  std::string para_text;
  std::string line;
  std::size_t line_no = 0;
  std::size_t doc_start = 1;

  auto flush_paragraph = [&] {
    if (!para_text.empty()) {
      current.paragraphs.push_back(RawParagraph{para_text, std::nullopt, {}});
      para_text.clear();
    }
  };
  auto flush_document = [&](bool at_eof) {
    flush_paragraph();
    current.id = "doc" + std::to_string(docs.size());
    if (current.paragraphs.empty()) {
      if (at_eof) return;
      throw CorpusError(location(source, doc_start) + " (document " + current.id +
                        "): document has zero paragraphs");
    }
    docs.push_back(std::move(current));
    current = RawDocument{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "====") {
      flush_document(false);
      doc_start = line_no + 1;
    } else if (line.find_first_not_of(" \t") == std::string::npos) {
      flush_paragraph();
    } else {
      if (!para_text.empty()) para_text.push_back('\n');
      para_text += line;
    }
  }
  flush_document(true);
  return docs;
}

}  // namespace

WordBag WordBag::from_ids(std::span<const int> ids) {
  std::map<int, std::int64_t> counts;
  for (int id : ids) ++counts[id];
  WordBag bag;
  bag.entries.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    bag.entries.push_back({word, count});
    bag.total += count;
  }
  return bag;
}

WordBag WordBag::from_counts(std::span<const std::int64_t> dense_counts) {
  WordBag bag;
  for (std::size_t w = 0; w < dense_counts.size(); ++w) {
    if (dense_counts[w] < 0) throw std::invalid_argument("WordBag: negative count");
    if (dense_counts[w] > 0) {
      bag.entries.push_back({static_cast<int>(w), dense_counts[w]});
      bag.total += dense_counts[w];
    }
  }
  return bag;
}

int Vocabulary::add(std::string_view token) {
  auto [it, inserted] = ids_.try_emplace(std::string(token), size());
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::checksum() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& t : tokens_) {
    for (char c : t) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  return h;
}

void Vocabulary::save(std::ostream& out) const {
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) throw CorpusError("vocabulary file contains an empty token");
    if (vocab.find(line)) throw CorpusError("vocabulary file contains duplicate token " + line);
    vocab.add(line);
  }
  return vocab;
}

std::int64_t Corpus::num_paragraphs() const {
  std::int64_t n = 0;
  for (const auto& d : documents) n += d.size();
  return n;
}

bool Headings::complete() const {
  if (per_document.empty()) return false;
  for (const auto& doc : per_document) {
    for (const auto& h : doc) {
      if (!h) return false;
    }
  }
  return true;
}

void LoadReport::write(std::ostream& out) const {
  out << "source: " << source << '\n'
      << "documents: " << documents << '\n'
      << "paragraphs: " << paragraphs << '\n'
      << "vocabulary_size: " << vocabulary_size << '\n'
      << "tokens_kept: " << tokens_kept << '\n'
      << "tokens_dropped: " << tokens_dropped << '\n'
      << "empty_paragraphs: " << empty_paragraphs.size() << '\n';
  for (const auto& [doc, idx] : empty_paragraphs) out << "  empty " << doc << ' ' << idx << '\n';
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t length = 0;
  auto flush = [&] {
    if (length > 0 && length >= options.min_length) tokens.push_back(current);
    current.clear();
    length = 0;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = decode_utf8(text, pos);
    if (is_separator(cp)) {
      flush();
      continue;
    }
    if (options.lowercase) cp = to_lower(cp);
    append_utf8(current, cp);
    ++length;
  }
  flush();
  return tokens;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> token_streams, int min_count) {
  if (min_count < 1) throw std::invalid_argument("build_vocabulary: min_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> counts;
  std::vector<std::string> first_seen;
  for (const auto& stream : token_streams) {
    for (const auto& tok : stream) {
      if (counts[tok]++ == 0) first_seen.push_back(tok);
    }
  }
  Vocabulary vocab;
  for (const auto& tok : first_seen) {
    if (counts[tok] >= min_count) vocab.add(tok);
  }
  if (vocab.size() == 0) throw CorpusError("vocabulary is empty after pruning");
  return vocab;
}

CorpusFormat format_from_path(const std::string& path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return (ends_with(".jsonl") || ends_with(".json")) ? CorpusFormat::JsonLines : CorpusFormat::PlainText;
}

LoadedCorpus parse_corpus(std::istream& in, CorpusFormat format, const LoadOptions& options,
                          const std::string& source) {
  std::vector<RawDocument> raw =
      format == CorpusFormat::JsonLines ? read_jsonl(in, source) : read_plain(in, source);
  if (raw.empty()) throw CorpusError(source + ": corpus contains no documents");

  std::vector<std::vector<std::string>> streams;
  for (auto& doc : raw) {
    for (auto& p : doc.paragraphs) {
      p.tokens = tokenize(p.text, options.tokenizer);
      streams.push_back(p.tokens);
    }
  }

  LoadedCorpus out;
  out.corpus.vocabulary =
      options.fixed_vocabulary ? *options.fixed_vocabulary : build_vocabulary(streams, options.min_count);
  const Vocabulary& vocab = out.corpus.vocabulary;

  out.report.source = source;
  for (auto& raw_doc : raw) {
    Document doc;
    doc.id = raw_doc.id;
    std::vector<std::optional<std::string>> headings;
    for (auto& raw_para : raw_doc.paragraphs) {
      std::vector<int> ids;
      ids.reserve(raw_para.tokens.size());
      for (const auto& tok : raw_para.tokens) {
        if (auto id = vocab.find(tok)) {
          ids.push_back(*id);
        } else {
          ++out.report.tokens_dropped;
        }
      }
      out.report.tokens_kept += static_cast<std::int64_t>(ids.size());
      if (ids.empty()) out.report.empty_paragraphs.emplace_back(doc.id, doc.size());
      doc.paragraphs.push_back(Paragraph{WordBag::from_ids(ids), std::move(raw_para.text)});
      headings.push_back(std::move(raw_para.heading));
    }
    out.report.paragraphs += doc.size();
    out.corpus.documents.push_back(std::move(doc));
    out.headings.per_document.push_back(std::move(headings));
  }
  out.report.documents = out.corpus.num_documents();
  out.report.vocabulary_size = vocab.size();
  return out;
}

LoadedCorpus load_corpus(const std::string& path, CorpusFormat format, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path);
  return parse_corpus(in, format, options, path);
}

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus, const Headings* headings) {
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    json record;
    record["id"] = doc.id;
    record["paragraphs"] = json::array();
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
      json para;
      para["text"] = doc.paragraphs[p].raw_text;
      if (headings && d < headings->per_document.size() && p < headings->per_document[d].size() &&
          headings->per_document[d][p]) {
        para["heading"] = *headings->per_document[d][p];
      }
      record["paragraphs"].push_back(std::move(para));
    }
    out << record.dump() << '\n';
  }
}

}  // namespace permtopic
