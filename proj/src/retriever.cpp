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

#include "tempret/retriever.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <thread>

#include "tempret/error.hpp"
#include "tempret/io.hpp"

namespace tempret {

namespace {

constexpr std::string_view kIndexMagic = "TMPRIDX1";
constexpr std::uint32_t kIndexFormatVersion = 1;

// Strict weak order: higher score, then later date, then smaller id.
struct RankOrder {
  const Index& index;

  bool operator()(double score_a, std::size_t pos_a, double score_b,
                  std::size_t pos_b) const {
    if (score_a != score_b) return score_a > score_b;
    if (index.date(pos_a) != index.date(pos_b)) return index.date(pos_a) > index.date(pos_b);
    return index.passage_id(pos_a) < index.passage_id(pos_b);
  }
};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_string(std::string& out, std::string_view s) {
  put_u64(out, s.size());
  out.append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n) {
    if (n > bytes_.size() - pos_) throw Error(ErrorCode::kParse, "truncated index file");
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint64_t u64() { return little_endian(take(8)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(take(4))); }
  std::string string() {
    const std::uint64_t n = u64();
    return std::string(take(static_cast<std::size_t>(n)));
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  static std::uint64_t little_endian(std::string_view s) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i])) << (8 * i);
    }
    return v;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view mode_name(RetrievalMode mode) {
  return mode == RetrievalMode::kTemporal ? "temporal" : "semantic_only";
}

std::optional<RetrievalMode> parse_mode(std::string_view name) {
  if (name == "temporal") return RetrievalMode::kTemporal;
  if (name == "semantic_only") return RetrievalMode::kSemanticOnly;
  return std::nullopt;
}

std::string_view stats_scope_name(StatsScope scope) {
  return scope == StatsScope::kQuery ? "query" : "global";
}

std::optional<StatsScope> parse_stats_scope(std::string_view name) {
  if (name == "query") return StatsScope::kQuery;
  if (name == "global") return StatsScope::kGlobal;
  return std::nullopt;
}

void validate(const RetrievalConfig& cfg) {
  if (cfg.top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
  if (cfg.over_retrieve_factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "over_retrieve_factor must be >= 1");
  }
  validate(cfg.temporal);
}

std::size_t candidate_count(const RetrievalConfig& cfg, std::size_t corpus_size) {
  return std::min(cfg.over_retrieve_factor * cfg.top_k, corpus_size);
}

std::string query_text_for(std::string_view question, const CivilDate& timestamp,
                           const RetrievalConfig& cfg) {
  std::string text(question);
  if (cfg.time_suffix_query) {
    text.push_back(' ');
    text += format_date(timestamp);
  }
  return text;
}

Index::Index(Corpus corpus, std::size_t dimension, std::vector<double> vectors,
             std::string encoder_fingerprint)
    : corpus_(std::move(corpus)),
      dimension_(dimension),
      vectors_(std::move(vectors)),
      fingerprint_(std::move(encoder_fingerprint)) {
  if (vectors_.size() != corpus_.size() * dimension_) {
    throw Error(ErrorCode::kInvalidArgument, "vector storage does not match corpus size");
  }
  dates_.reserve(corpus_.size());
  for (const Passage& p : corpus_.passages()) dates_.push_back(epoch_day(p.date));
  corpus_digest_ = corpus_hash(corpus_);
}

Index build_index(Corpus corpus, const Encoder& encoder, unsigned threads) {
  const std::size_t n = corpus.size();
  const std::size_t dim = encoder.dimension();
  std::vector<double> vectors(n * dim);
  auto encode_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const EmbeddingVector v = encoder.encode(corpus.at(i).text);
      std::copy(v.values.begin(), v.values.end(), vectors.begin() + i * dim);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    encode_range(0, n);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      workers.emplace_back(encode_range, begin, end);
    }
  }
  return Index(std::move(corpus), dim, std::move(vectors), encoder.fingerprint());
}

std::string serialize_index(const Index& index) {
  std::string out(kIndexMagic);
  put_u32(out, kIndexFormatVersion);
  put_string(out, index.encoder_fingerprint());
  put_string(out, index.corpus_digest());
  put_u64(out, index.dimension());
  put_u64(out, index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    put_u64(out, static_cast<std::uint64_t>(index.date(i)));
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (double x : index.vector(i)) put_u64(out, std::bit_cast<std::uint64_t>(x));
  }
  return out;
}

Index deserialize_index(std::string_view bytes, Corpus corpus, const Encoder& encoder) {
  Reader r(bytes);
  if (r.take(kIndexMagic.size()) != kIndexMagic) {
    throw Error(ErrorCode::kParse, "not an index file");
  }
  if (const auto version = r.u32(); version != kIndexFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported index format version " + std::to_string(version));
  }
  const std::string fingerprint = r.string();
  if (fingerprint != encoder.fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "index built with \"" + fingerprint + "\", encoder is \"" +
                    encoder.fingerprint() + "\"");
  }
  const std::string digest = r.string();
  if (digest != corpus_hash(corpus)) {
    throw Error(ErrorCode::kCorpusMismatch, "index was built from a different corpus");
  }
  const std::uint64_t dim = r.u64();
  const std::uint64_t n = r.u64();
  if (dim != encoder.dimension() || n != corpus.size()) {
    throw Error(ErrorCode::kCorpusMismatch, "index shape does not match corpus/encoder");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (static_cast<EpochDay>(r.u64()) != epoch_day(corpus.at(i).date)) {
      throw Error(ErrorCode::kCorpusMismatch, "date mismatch at position " + std::to_string(i));
    }
  }
  std::vector<double> vectors(n * dim);
  for (double& x : vectors) x = std::bit_cast<double>(r.u64());
  if (!r.done()) throw Error(ErrorCode::kParse, "trailing bytes in index file");
  return Index(std::move(corpus), dim, std::move(vectors), fingerprint);
}

void save_index(const Index& index, const std::filesystem::path& path) {
  write_file(path, serialize_index(index));
}

Index load_index(const std::filesystem::path& path, Corpus corpus, const Encoder& encoder) {
  return deserialize_index(read_file(path), std::move(corpus), encoder);
}

std::vector<Candidate> candidate_set(const Index& index, std::span<const double> query,
                                     std::size_t n) {
  std::vector<Candidate> all(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    all[i] = Candidate{i, semantic_score(query, index.vector(i))};
  }
  n = std::min(n, all.size());
  const RankOrder order{index};
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [&](const Candidate& a, const Candidate& b) {
                      return order(a.semantic, a.position, b.semantic, b.position);
                    });
  all.resize(n);
  return all;
}

std::optional<double> temp_ret_score(double semantic, double tau_normalized,
                                     EpochDay query_day, EpochDay doc_day,
                                     bool mask_future) {
  if (mask_future && query_day < doc_day) return std::nullopt;
  return semantic + tau_normalized;
}

double proximity_score(EpochDay query_day, EpochDay doc_day, const TemporalConfig& cfg) {
  if (doc_day > query_day) return raw_temporal_score(doc_day, query_day, cfg);
  return raw_temporal_score(query_day, doc_day, cfg);
}

GlobalStats compute_global_stats(const Index& index, std::span<const TimedQuery> queries,
                                 const RetrievalConfig& cfg, const Encoder& encoder) {
  std::vector<double> taus;
  std::vector<double> sems;
  for (const TimedQuery& q : queries) {
    const EmbeddingVector qv = encoder.encode(q.text);
    const EpochDay qt = epoch_day(q.timestamp);
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (cfg.mask_future && index.date(i) > qt) continue;
      taus.push_back(proximity_score(qt, index.date(i), cfg.temporal));
      sems.push_back(semantic_score(qv.values, index.vector(i)));
    }
  }
  return GlobalStats{compute_stats(taus), compute_stats(sems)};
}

std::vector<ScoredPassage> retrieve(const Index& index, std::string_view query_text,
                                    const CivilDate& query_ts, const RetrievalConfig& cfg,
                                    const Encoder& encoder, const GlobalStats* global) {
  validate(cfg);
  if (encoder.fingerprint() != index.encoder_fingerprint()) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "index built with \"" + index.encoder_fingerprint() + "\"");
  }
  if (index.size() == 0) return {};

  const EmbeddingVector query = encoder.encode(query_text);
  const EpochDay qt = epoch_day(query_ts);
  const std::vector<Candidate> candidates =
      candidate_set(index, query.values, candidate_count(cfg, index.size()));

  auto make = [&](const Candidate& c) {
    ScoredPassage sp;
    sp.passage_id = index.passage_id(c.position);
    sp.date = index.corpus().at(c.position).date;
    sp.semantic = c.semantic;
    sp.combined = c.semantic;
    return sp;
  };

  std::vector<ScoredPassage> out;
  if (cfg.mode == RetrievalMode::kSemanticOnly) {
    for (std::size_t i = 0; i < candidates.size() && i < cfg.top_k; ++i) {
      out.push_back(make(candidates[i]));
      out.back().rank = i + 1;
    }
    return out;
  }

  // Masked candidates leave before any statistics are taken.
  std::vector<Candidate> survivors;
  for (const Candidate& c : candidates) {
    if (!cfg.mask_future || index.date(c.position) <= qt) survivors.push_back(c);
  }
  if (survivors.empty()) return {};

  std::vector<double> tau_raw(survivors.size());
  std::vector<double> sem(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    tau_raw[i] = proximity_score(qt, index.date(survivors[i].position), cfg.temporal);
    sem[i] = survivors[i].semantic;
  }

  GlobalStats stats;
  if (cfg.stats_scope == StatsScope::kQuery) {
    stats = GlobalStats{compute_stats(tau_raw), compute_stats(sem)};
  } else if (global != nullptr) {
    stats = *global;
  } else {
    const TimedQuery self{std::string(query_text), query_ts};
    stats = compute_global_stats(index, std::span(&self, 1), cfg, encoder);
  }
  const std::vector<double> tau_norm = normalize_temporal(tau_raw, stats.tau, stats.semantic);

  struct Ranked {
    std::size_t slot;
    double combined;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto score = temp_ret_score(sem[i], tau_norm[i], qt,
                                      index.date(survivors[i].position), cfg.mask_future);
    if (score) ranked.push_back(Ranked{i, *score});
  }
  const RankOrder order{index};
  std::sort(ranked.begin(), ranked.end(), [&](const Ranked& a, const Ranked& b) {
    return order(a.combined, survivors[a.slot].position, b.combined,
                 survivors[b.slot].position);
  });

  for (std::size_t i = 0; i < ranked.size() && i < cfg.top_k; ++i) {
    ScoredPassage sp = make(survivors[ranked[i].slot]);
    sp.temporal_normalized = tau_norm[ranked[i].slot];
    sp.combined = ranked[i].combined;
    sp.rank = i + 1;
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace tempret
