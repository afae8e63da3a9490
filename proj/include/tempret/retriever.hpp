// Copyright 2026 The tempret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Temporally-aware top-k retrieval.
//
// Pipeline for one query:
//   1. encode the query and take the over_retrieve_factor * top_k passages
//      with the highest dot-product score (exhaustive scan);
//   2. temporal mode only: drop candidates dated after the query, compute
//      raw proximity scores for the survivors, normalize them onto the
//      semantic score distribution and add the two;
//   3. sort by combined score and keep top_k.
//
// Ties order by later date first, then by passage id.

#ifndef TEMPRET_RETRIEVER_HPP_
#define TEMPRET_RETRIEVER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempret/corpus.hpp"
#include "tempret/embedding.hpp"
#include "tempret/temporal.hpp"

namespace tempret {

enum class RetrievalMode { kSemanticOnly, kTemporal };
enum class StatsScope { kQuery, kGlobal };

std::string_view mode_name(RetrievalMode mode);
std::optional<RetrievalMode> parse_mode(std::string_view name);
std::string_view stats_scope_name(StatsScope scope);
std::optional<StatsScope> parse_stats_scope(std::string_view name);

struct RetrievalConfig {
  std::size_t top_k = 5;
  std::size_t over_retrieve_factor = 5;
  bool mask_future = true;
  RetrievalMode mode = RetrievalMode::kTemporal;
  TemporalConfig temporal;
  StatsScope stats_scope = StatsScope::kQuery;
  // Append the query timestamp (YYYY-MM-DD) to the question before encoding,
  // the way time-suffixed training questions are written.
  bool time_suffix_query = true;
};

void validate(const RetrievalConfig& cfg);

// min(over_retrieve_factor * top_k, corpus_size).
std::size_t candidate_count(const RetrievalConfig& cfg, std::size_t corpus_size);

std::string query_text_for(std::string_view question, const CivilDate& timestamp,
                           const RetrievalConfig& cfg);

// Immutable document index: one embedding and one epoch day per passage,
// aligned with corpus positions.
class Index {
 public:
  Index() = default;
  Index(Corpus corpus, std::size_t dimension, std::vector<double> vectors,
        std::string encoder_fingerprint);

  const Corpus& corpus() const { return corpus_; }
  std::size_t size() const { return corpus_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> vector(std::size_t pos) const {
    return {vectors_.data() + pos * dimension_, dimension_};
  }
  EpochDay date(std::size_t pos) const { return dates_[pos]; }
  const std::string& passage_id(std::size_t pos) const { return corpus_.at(pos).id; }
  const std::string& encoder_fingerprint() const { return fingerprint_; }
  const std::string& corpus_digest() const { return corpus_digest_; }

 private:
  Corpus corpus_;
  std::size_t dimension_ = 0;
  std::vector<double> vectors_;  // row-major, size() x dimension_
  std::vector<EpochDay> dates_;
  std::string fingerprint_;
  std::string corpus_digest_;
};

// Encodes every passage. `threads` > 1 splits encoding by position range;
// the result does not depend on the thread count.
Index build_index(Corpus corpus, const Encoder& encoder, unsigned threads = 1);

// Little-endian binary: magic, format version, encoder fingerprint, corpus
// SHA-256, dimension, count, epoch days, IEEE-754 doubles.
std::string serialize_index(const Index& index);
// Throws kParse on a malformed buffer, kFingerprintMismatch if `encoder`
// differs from the one that built the index, kCorpusMismatch if `corpus`
// is not the corpus it was built from.
Index deserialize_index(std::string_view bytes, Corpus corpus, const Encoder& encoder);
void save_index(const Index& index, const std::filesystem::path& path);
Index load_index(const std::filesystem::path& path, Corpus corpus, const Encoder& encoder);

struct Candidate {
  std::size_t position = 0;
  double semantic = 0.0;
};

// The min(n, |corpus|) best passages by semantic score, best first.
std::vector<Candidate> candidate_set(const Index& index, std::span<const double> query,
                                     std::size_t n);

// Combined ranking score for one candidate, or nullopt when the candidate
// is excluded (dated after the query with masking on).
std::optional<double> temp_ret_score(double semantic, double tau_normalized,
                                     EpochDay query_day, EpochDay doc_day,
                                     bool mask_future);

// Raw proximity used by the pipeline. With masking off, future documents
// are scored by absolute distance.
double proximity_score(EpochDay query_day, EpochDay doc_day, const TemporalConfig& cfg);

struct ScoredPassage {
  std::string passage_id;
  CivilDate date;
  double semantic = 0.0;
  std::optional<double> temporal_normalized;  // absent in semantic-only mode
  double combined = 0.0;
  std::size_t rank = 0;  // 1-based
};

struct GlobalStats {
  ScoreStats tau;
  ScoreStats semantic;
};

struct TimedQuery {
  std::string text;  // already suffixed if the config asks for it
  CivilDate timestamp;
};

// Statistics over every non-masked (query, passage) pair of the whole
// corpus. Throws kEmptyPopulation if every pair is masked.
GlobalStats compute_global_stats(const Index& index, std::span<const TimedQuery> queries,
                                 const RetrievalConfig& cfg, const Encoder& encoder);

// `query_text` is encoded as given. With stats_scope == kGlobal and no
// `global` supplied, statistics are taken over this query against the whole
// corpus. Throws kFingerprintMismatch if `encoder` did not build `index`.
std::vector<ScoredPassage> retrieve(const Index& index, std::string_view query_text,
                                    const CivilDate& query_ts, const RetrievalConfig& cfg,
                                    const Encoder& encoder,
                                    const GlobalStats* global = nullptr);

}  // namespace tempret

#endif  // TEMPRET_RETRIEVER_HPP_
