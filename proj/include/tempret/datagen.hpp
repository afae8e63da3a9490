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

// Seeded synthetic temporal QA data: tennis-style event tables, passages,
// paired test query sets that differ only in timestamp, and disjoint
// few-shot training splits.
//
// Every random draw comes from std::mt19937_64 (fully specified by the
// standard) through the bounded-draw helpers below, never from the
// implementation-defined std distributions, so output is identical across
// standard libraries.

#ifndef TEMPRET_DATAGEN_HPP_
#define TEMPRET_DATAGEN_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tempret/corpus.hpp"
#include "tempret/evaluation.hpp"
#include "tempret/templates.hpp"

namespace tempret {

class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit seed derived from a base seed and a key string.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

struct GenSpec {
  std::vector<std::string> tournaments = {"Australian Open", "Roland Garros", "Wimbledon",
                                          "US Open"};
  std::vector<std::string> categories = {"men's singles", "women's singles"};
  int year_start = 1978;  // training era, inclusive
  int year_end = 2018;
  int test_year = 2019;  // must be after year_end
  std::uint64_t seed = 42;
  std::vector<QueryType> query_types = {QueryType::kWinner, QueryType::kRunnerUp,
                                        QueryType::kFinalists, QueryType::kScore};
  std::size_t passages_per_row = 1;  // templates t0..t{n-1} per row
  std::size_t tpq_size = 128;
  std::vector<std::size_t> fewshot_sizes = {32, 64, 128};
};

// Throws kInvalidArgument with a message naming the offending field.
void validate(const GenSpec& spec);

nlohmann::ordered_json to_json(const GenSpec& spec);
// Missing keys keep the defaults of `base`; unknown keys are rejected.
GenSpec gen_spec_from_json(const nlohmann::json& j, GenSpec base = {});

// One row per (year, tournament, category) over [year_start, year_end].
// A row's content depends only on (seed, tournament, category, year).
std::vector<EventRow> gen_event_table(const GenSpec& spec);
std::vector<EventRow> gen_event_rows(const GenSpec& spec, int first_year, int last_year);

// Month and day window of a tournament's final.
struct FinalWindow {
  int month;
  int first_day;
  int last_day;
};
FinalWindow final_window(const GenSpec& spec, std::string_view tournament);

// Passages t0..t{passages_per_row-1} for every row, in row order.
Corpus build_corpus(std::span<const EventRow> rows, std::size_t passages_per_row);

std::string gold_passage_id(const EventRow& row);

struct QuerySetPair {
  std::vector<Query> tpq_early;  // stamped Y-12-31
  std::vector<Query> tpq_late;   // stamped (Y+1)-01-01
};

// Queries about one event year, balanced across spec.query_types: each type
// gets tpq_size / T queries (the first tpq_size % T types one more), drawn
// from (question variant, row) in order. Throws kMixedYears.
QuerySetPair gen_tpq_pair(std::span<const EventRow> rows, const GenSpec& spec);

// Pairwise-disjoint training splits. Per split of size n over T query types
// the first n % T types receive one extra query; within a type, queries are
// taken round-robin over tournaments from seeded shuffles. Timestamps are
// uniform between the final and December 31 of the event year.
// Throws kInsufficientRows.
std::vector<std::vector<Query>> gen_fewshot_splits(
    std::span<const EventRow> rows, std::span<const std::size_t> sizes, std::uint64_t seed,
    std::span<const QueryType> query_types = all_query_types());

struct Dataset {
  std::vector<EventRow> events;  // training era followed by the test year
  Corpus corpus;
  QuerySetPair tpq;
  std::vector<std::vector<Query>> fewshot;
};

Dataset generate_dataset(const GenSpec& spec);

}  // namespace tempret

#endif  // TEMPRET_DATAGEN_HPP_
