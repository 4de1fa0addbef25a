#pragma once

// Line-delimited JSON files for posterior samples and task outputs.
//
// Sample file, one JSON object per line:
//   line 1   header: {"format":"permtopic-sample","version":1,"config":{...},
//            "chain":c,"iteration":n,"vocabulary":{"file":...,"size":W,
//            "checksum":"<16 hex digits>"},"num_documents":D,"num_topics":K,
//            "rho":[...],"topic_draws":[...]}
//   D lines  {"doc":d,"id":...,"t":[...],"v":[...],"z":[...]}
//   K lines  {"topic":k,"total":N,"words":[[w,c],...]}   (nonzero counts only)

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "permtopic/corpus.hpp"
#include "permtopic/eval.hpp"
#include "permtopic/sampler.hpp"
#include "permtopic/tasks.hpp"

namespace permtopic {

constexpr int kSampleFormatVersion = 1;

struct SampleFile {
  PosteriorSample sample;
  std::vector<std::string> document_ids;
  std::string vocabulary_file;
  int vocabulary_size = 0;
  std::uint64_t vocabulary_checksum = 0;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string checksum_hex(std::uint64_t checksum);

void write_sample(std::ostream& out, const PosteriorSample& sample, const Corpus& corpus,
                  const std::string& vocabulary_file);
SampleFile read_sample(std::istream& in);

/// One line per paragraph: {"doc":id,"paragraph":p,"cluster":k}.
void write_alignment(std::ostream& out, const Alignment& alignment, const Corpus& corpus);
/// One line per document: {"doc":id,"boundaries":[...],"lengths":[...]}.
void write_segmentation(std::ostream& out, const std::vector<Segmentation>& segmentations, const Corpus& corpus);
/// One line per document: {"doc":id,"rank":[...],"topic":[...],"tau":x|null}.
void write_ordering(std::ostream& out, const std::string& doc_id, const Ordering& ordering,
                    const std::optional<double>& tau);

}  // namespace permtopic
