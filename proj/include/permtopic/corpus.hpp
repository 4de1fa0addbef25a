#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace permtopic {

struct WordCount {
  int word = 0;
  std::int64_t count = 0;

  bool operator==(const WordCount&) const = default;
};

/// Bag of words: distinct word ids in ascending order with their counts.
struct WordBag {
  std::vector<WordCount> entries;
  std::int64_t total = 0;

  static WordBag from_ids(std::span<const int> ids);
  static WordBag from_counts(std::span<const std::int64_t> dense_counts);

  bool empty() const { return total == 0; }
  bool operator==(const WordBag&) const = default;
};

class Vocabulary {
 public:
  /// Returns the id of `token`, assigning the next free id if unseen.
  int add(std::string_view token);
  std::optional<int> find(std::string_view token) const;
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(tokens_.size()); }
  std::span<const std::string> tokens() const { return tokens_; }

  /// FNV-1a over the id-ordered token list.
  std::uint64_t checksum() const;

  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

struct Paragraph {
  WordBag words;
  std::string raw_text;
};

struct Document {
  std::string id;
  std::vector<Paragraph> paragraphs;

  int size() const { return static_cast<int>(paragraphs.size()); }
};

struct Corpus {
  std::vector<Document> documents;
  Vocabulary vocabulary;

  int num_documents() const { return static_cast<int>(documents.size()); }
  std::int64_t num_paragraphs() const;
};

/// Section headings per document and paragraph. Kept apart from `Corpus` so
/// the inference path cannot see them.
struct Headings {
  std::vector<std::vector<std::optional<std::string>>> per_document;

  /// True when every paragraph of every document carries a heading.
  bool complete() const;
};

struct LoadReport {
  std::string source;
  int documents = 0;
  std::int64_t paragraphs = 0;
  std::int64_t tokens_kept = 0;
  std::int64_t tokens_dropped = 0;
  int vocabulary_size = 0;
  // (document id, 0-based paragraph index) of paragraphs left empty after
  // vocabulary filtering.
  std::vector<std::pair<std::string, int>> empty_paragraphs;

  void write(std::ostream& out) const;
};

struct LoadedCorpus {
  Corpus corpus;
  Headings headings;
  LoadReport report;
};

enum class CorpusFormat { JsonLines, PlainText };

struct TokenizerOptions {
  bool lowercase = true;
  std::size_t min_length = 1;
};

struct LoadOptions {
  TokenizerOptions tokenizer;
  int min_count = 2;
  // When set, tokens are mapped through this vocabulary and unknown tokens
  // discarded instead of building a new one.
  const Vocabulary* fixed_vocabulary = nullptr;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Splits on any code point that is not a letter or digit. Non-ASCII code
/// points count as letters unless they fall in a punctuation or symbol block.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

/// Ids follow first appearance; tokens seen fewer than `min_count` times are
/// dropped. Throws CorpusError if nothing survives.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> token_streams, int min_count);

CorpusFormat format_from_path(const std::string& path);

LoadedCorpus parse_corpus(std::istream& in, CorpusFormat format, const LoadOptions& options,
                          const std::string& source = "<stream>");
LoadedCorpus load_corpus(const std::string& path, CorpusFormat format, const LoadOptions& options = {});

/// Writes the JSON-lines corpus format; headings are included when given.
void write_corpus_jsonl(std::ostream& out, const Corpus& corpus, const Headings* headings = nullptr);

}  // namespace permtopic
