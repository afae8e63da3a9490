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

#ifndef TEMPRET_EVALUATION_HPP_
#define TEMPRET_EVALUATION_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tempret/corpus.hpp"
#include "tempret/retriever.hpp"

namespace tempret {

struct Query {
  std::string id;
  std::string question;
  CivilDate timestamp;
  std::string answer;
  std::string gold_passage_id;

  friend bool operator==(const Query&, const Query&) = default;
};

struct QueryTrace {
  std::string query_id;
  std::optional<std::size_t> gold_rank;  // 1-based; absent if not retrieved
  std::vector<std::string> top_ids;
};

struct EvalReport {
  RetrievalMode mode = RetrievalMode::kTemporal;
  double recall_at_1 = 0.0;
  double recall_at_5 = 0.0;
  std::optional<double> exact_match;
  std::vector<QueryTrace> per_query;
};

// 1 iff gold_id is among the first min(k, |results|) results.
int recall_at_k(std::span<const ScoredPassage> results, std::string_view gold_id,
                std::size_t k);

// Lowercase, drop ASCII punctuation, drop the articles a/an/the, collapse
// whitespace.
std::string normalize_answer(std::string_view s);
int exact_match(std::string_view predicted, std::string_view gold);

using Predictions = std::map<std::string, std::string, std::less<>>;

// Recall fractions from per-query traces (count / N, no accumulation).
EvalReport aggregate(RetrievalMode mode, std::vector<QueryTrace> per_query,
                     std::optional<double> exact_match = std::nullopt);

// Retrieves every query and aggregates recall@1/@5. Exact match is averaged
// over the queries that have a prediction and is absent without predictions.
// Errors: kEmptyQuerySet, kUnknownGoldPassage, kInvalidArgument (prediction
// for an unknown query). Output does not depend on `threads`.
EvalReport run_eval(const Index& index, std::span<const Query> queries,
                    const RetrievalConfig& cfg, const Encoder& encoder,
                    const Predictions* predictions = nullptr, unsigned threads = 1);

// JSON-lines {"id","question","timestamp","answer","gold_passage_id"}.
std::vector<Query> parse_queries(std::string_view jsonl);
std::vector<Query> load_queries(const std::filesystem::path& path);
std::string serialize_queries(std::span<const Query> queries);

// JSON-lines {"id","prediction"}.
Predictions parse_predictions(std::string_view jsonl);
Predictions load_predictions(const std::filesystem::path& path);

nlohmann::ordered_json report_to_json(const EvalReport& report);

struct NamedReport {
  std::string query_set;
  EvalReport report;
};

// Rows are modes, column pairs are query sets.
std::string format_recall_table(std::span<const NamedReport> reports);

}  // namespace tempret

#endif  // TEMPRET_EVALUATION_HPP_
