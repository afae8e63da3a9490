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

#include "tempret/datagen.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

#include "tempret/error.hpp"

namespace tempret {

namespace {

constexpr std::array<std::string_view, 24> kSyllables = {
    "ka", "ren", "lo",  "vi",  "tor", "ma",  "sel", "dan", "ri",  "no",  "bel", "ta",
    "gor", "lin", "su", "mi",  "ra",  "vek", "sto", "dal", "pe",  "zan", "or",  "hu"};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string make_name(SeededStream& rng) {
  auto word = [&](int syllables) {
    std::string w;
    for (int i = 0; i < syllables; ++i) w += kSyllables[rng.below(kSyllables.size())];
    return capitalize(w);
  };
  std::string first_name = word(2);
  return first_name + " " + word(2);
}

// Names are shared across tournaments and years of one category, so the same
// players reach many finals.
std::vector<std::string> player_pool(std::uint64_t seed, std::string_view category) {
  constexpr std::size_t kPoolSize = 32;
  SeededStream rng(derive_seed(seed, "players|" + std::string(category)));
  std::set<std::string> seen;
  std::vector<std::string> pool;
  while (pool.size() < kPoolSize) {
    std::string name = make_name(rng);
    if (seen.insert(name).second) pool.push_back(std::move(name));
  }
  return pool;
}

bool is_doubles(std::string_view category) {
  return category.find("doubles") != std::string_view::npos;
}

bool best_of_five(std::string_view category) {
  return category.rfind("men's", 0) == 0 && category.find("singles") != std::string_view::npos;
}

std::string make_set(SeededStream& rng, bool winner_takes_it) {
  static constexpr std::array<std::string_view, 7> kSets = {"6-0", "6-1", "6-2", "6-3",
                                                            "6-4", "7-5", "7-6"};
  std::string s(kSets[rng.below(kSets.size())]);
  if (!winner_takes_it) std::reverse(s.begin(), s.end());
  return s;
}

std::string make_score(SeededStream& rng, std::string_view category) {
  const int to_win = best_of_five(category) ? 3 : 2;
  const int lost = static_cast<int>(rng.between(0, to_win - 1));
  // Winner takes the last set; the lost sets land somewhere before it.
  std::vector<bool> sets(static_cast<std::size_t>(to_win - 1), true);
  sets.insert(sets.end(), static_cast<std::size_t>(lost), false);
  rng.shuffle(sets);
  std::string score;
  for (bool w : sets) score += make_set(rng, w) + " ";
  score += make_set(rng, true);
  return score;
}

std::string side_name(SeededStream& rng, const std::vector<std::string>& pool,
                      std::set<std::size_t>& used, bool doubles) {
  auto pick = [&] {
    std::size_t i;
    do {
      i = static_cast<std::size_t>(rng.below(pool.size()));
    } while (used.contains(i));
    used.insert(i);
    return pool[i];
  };
  std::string name = pick();
  if (doubles) name += " / " + pick();
  return name;
}

Error invalid(const std::string& what) { return Error(ErrorCode::kInvalidArgument, what); }

CivilDate year_end_date(int year) { return CivilDate{year, 12, 31}; }

std::string query_id(std::string_view prefix, const EventRow& row, QueryType type,
                     std::size_t variant) {
  return std::string(prefix) + "-" + slugify(row.tournament) + "-" + slugify(row.category) +
         "-" + std::to_string(row.year) + "-" + std::string(query_type_name(type)) + "-q" +
         std::to_string(variant);
}

Query make_query(std::string_view prefix, const EventRow& row, QueryType type,
                 std::size_t variant, const CivilDate& ts) {
  Query q;
  q.id = query_id(prefix, row, type, variant);
  q.question = render_template(question_templates(type)[variant], row);
  q.timestamp = ts;
  q.answer = answer_for(row, type);
  q.gold_passage_id = gold_passage_id(row);
  return q;
}

// Quota per query type: n / T each, the first n % T types one extra.
std::vector<std::size_t> type_quotas(std::size_t n, std::size_t types) {
  std::vector<std::size_t> q(types, n / types);
  for (std::size_t i = 0; i < n % types; ++i) ++q[i];
  return q;
}

}  // namespace

std::uint64_t SeededStream::below(std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t SeededStream::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void validate(const GenSpec& spec) {
  if (spec.year_start > spec.year_end) {
    throw invalid("year range " + std::to_string(spec.year_start) + ":" +
                  std::to_string(spec.year_end) + " is empty (start > end)");
  }
  if (spec.test_year <= spec.year_end) {
    throw invalid("test year " + std::to_string(spec.test_year) +
                  " must come after the training range");
  }
  if (spec.year_start < 1 || spec.test_year > 9998) throw invalid("years must lie in 1..9998");
  if (spec.tournaments.empty()) throw invalid("no tournaments");
  if (spec.categories.empty()) throw invalid("no categories");
  for (const auto& names : {spec.tournaments, spec.categories}) {
    std::set<std::string> slugs;
    for (const std::string& n : names) {
      if (slugify(n).empty()) throw invalid("name \"" + n + "\" has no alphanumerics");
      if (!slugs.insert(slugify(n)).second) throw invalid("duplicate name \"" + n + "\"");
    }
  }
  if (spec.query_types.empty()) throw invalid("no query types");
  if (std::set<QueryType>(spec.query_types.begin(), spec.query_types.end()).size() !=
      spec.query_types.size()) {
    throw invalid("duplicate query type");
  }
  if (std::set<std::size_t>(spec.fewshot_sizes.begin(), spec.fewshot_sizes.end()).size() !=
          spec.fewshot_sizes.size() ||
      std::count(spec.fewshot_sizes.begin(), spec.fewshot_sizes.end(), 0u) > 0) {
    throw invalid("few-shot sizes must be distinct and positive");
  }
  if (spec.passages_per_row < 1 || spec.passages_per_row > passage_templates().size()) {
    throw invalid("passages_per_row must lie in 1.." +
                  std::to_string(passage_templates().size()));
  }
}

nlohmann::ordered_json to_json(const GenSpec& spec) {
  nlohmann::ordered_json j;
  j["tournaments"] = spec.tournaments;
  j["categories"] = spec.categories;
  j["year_start"] = spec.year_start;
  j["year_end"] = spec.year_end;
  j["test_year"] = spec.test_year;
  j["seed"] = spec.seed;
  auto& types = j["query_types"] = nlohmann::ordered_json::array();
  for (QueryType t : spec.query_types) types.push_back(query_type_name(t));
  j["passages_per_row"] = spec.passages_per_row;
  j["tpq_size"] = spec.tpq_size;
  j["fewshot_sizes"] = spec.fewshot_sizes;
  return j;
}

GenSpec gen_spec_from_json(const nlohmann::json& j, GenSpec spec) {
  if (!j.is_object()) throw invalid("gen spec must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "tournaments") spec.tournaments = value.get<std::vector<std::string>>();
      else if (key == "categories") spec.categories = value.get<std::vector<std::string>>();
      else if (key == "year_start") spec.year_start = value.get<int>();
      else if (key == "year_end") spec.year_end = value.get<int>();
      else if (key == "test_year") spec.test_year = value.get<int>();
      else if (key == "seed") spec.seed = value.get<std::uint64_t>();
      else if (key == "passages_per_row") spec.passages_per_row = value.get<std::size_t>();
      else if (key == "tpq_size") spec.tpq_size = value.get<std::size_t>();
      else if (key == "fewshot_sizes") spec.fewshot_sizes = value.get<std::vector<std::size_t>>();
      else if (key == "query_types") {
        spec.query_types.clear();
        for (const auto& name : value.get<std::vector<std::string>>()) {
          const auto t = parse_query_type(name);
          if (!t) throw invalid("unknown query type \"" + name + "\"");
          spec.query_types.push_back(*t);
        }
      } else {
        throw invalid("unknown gen spec key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid(std::string("gen spec: ") + e.what());
  }
  return spec;
}

FinalWindow final_window(const GenSpec& spec, std::string_view tournament) {
  if (tournament == "Australian Open") return {1, 24, 31};
  if (tournament == "Roland Garros") return {6, 3, 10};
  if (tournament == "Wimbledon") return {7, 5, 14};
  if (tournament == "US Open") return {9, 6, 13};
  const auto it = std::find(spec.tournaments.begin(), spec.tournaments.end(), tournament);
  const std::size_t i = static_cast<std::size_t>(it - spec.tournaments.begin());
  const int month = 1 + static_cast<int>((i * 12) / std::max<std::size_t>(spec.tournaments.size(), 1)) % 12;
  return {month, 8, 21};
}

std::vector<EventRow> gen_event_rows(const GenSpec& spec, int first_year, int last_year) {
  std::map<std::string, std::vector<std::string>> pools;
  for (const std::string& c : spec.categories) pools.emplace(c, player_pool(spec.seed, c));

  std::vector<EventRow> rows;
  for (int year = first_year; year <= last_year; ++year) {
    for (const std::string& t : spec.tournaments) {
      const FinalWindow w = final_window(spec, t);
      // All draws of one tournament finish on the same weekend.
      SeededStream weekend(derive_seed(spec.seed, t + "|" + std::to_string(year)));
      const auto last_day = static_cast<int>(weekend.between(w.first_day + 1, w.last_day));
      for (const std::string& c : spec.categories) {
        SeededStream rng(derive_seed(spec.seed, t + "|" + c + "|" + std::to_string(year)));
        EventRow row;
        row.tournament = t;
        row.category = c;
        row.year = year;
        std::set<std::size_t> used;
        row.winner = side_name(rng, pools.at(c), used, is_doubles(c));
        row.runner_up = side_name(rng, pools.at(c), used, is_doubles(c));
        row.score = make_score(rng, c);
        row.final_date = CivilDate{year, w.month, last_day - static_cast<int>(rng.below(2))};
        validate_event_row(row);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<EventRow> gen_event_table(const GenSpec& spec) {
  validate(spec);
  return gen_event_rows(spec, spec.year_start, spec.year_end);
}

Corpus build_corpus(std::span<const EventRow> rows, std::size_t passages_per_row) {
  const auto templates = passage_templates();
  if (passages_per_row < 1 || passages_per_row > templates.size()) {
    throw invalid("passages_per_row out of range");
  }
  std::vector<Passage> passages;
  passages.reserve(rows.size() * passages_per_row);
  for (const EventRow& row : rows) {
    for (std::size_t t = 0; t < passages_per_row; ++t) {
      passages.push_back(row_to_passage(row, templates[t].id));
    }
  }
  return Corpus(std::move(passages));
}

std::string gold_passage_id(const EventRow& row) {
  return passage_id_for(row, passage_templates()[0].id);
}

QuerySetPair gen_tpq_pair(std::span<const EventRow> rows, const GenSpec& spec) {
  QuerySetPair pair;
  if (rows.empty()) return pair;
  const int year = rows.front().year;
  for (const EventRow& r : rows) {
    if (r.year != year) {
      throw Error(ErrorCode::kMixedYears, std::to_string(year) + " and " + std::to_string(r.year));
    }
  }
  const CivilDate early = year_end_date(year);
  const CivilDate late{year + 1, 1, 1};
  const auto quotas = type_quotas(spec.tpq_size, spec.query_types.size());
  for (std::size_t ti = 0; ti < spec.query_types.size(); ++ti) {
    const QueryType type = spec.query_types[ti];
    std::size_t taken = 0;
    const std::size_t variants = question_templates(type).size();
    for (std::size_t v = 0; v < variants && taken < quotas[ti]; ++v) {
      for (std::size_t r = 0; r < rows.size() && taken < quotas[ti]; ++r, ++taken) {
        pair.tpq_early.push_back(make_query("tpq", rows[r], type, v, early));
        pair.tpq_late.push_back(make_query("tpq", rows[r], type, v, late));
      }
    }
  }
  return pair;
}

std::vector<std::vector<Query>> gen_fewshot_splits(std::span<const EventRow> rows,
                                                   std::span<const std::size_t> sizes,
                                                   std::uint64_t seed,
                                                   std::span<const QueryType> query_types) {
  if (query_types.empty()) throw invalid("no query types");
  struct Item {
    std::size_t row;
    std::size_t variant;
  };
  std::vector<std::string> tournaments;
  for (const EventRow& r : rows) {
    if (std::find(tournaments.begin(), tournaments.end(), r.tournament) == tournaments.end()) {
      tournaments.push_back(r.tournament);
    }
  }

  // pools[type][tournament] is a seeded shuffle of every (row, variant).
  SeededStream rng(derive_seed(seed, "fewshot"));
  std::vector<std::vector<std::vector<Item>>> pools(query_types.size());
  std::vector<std::vector<std::size_t>> cursor(query_types.size());
  for (std::size_t ti = 0; ti < query_types.size(); ++ti) {
    pools[ti].resize(tournaments.size());
    cursor[ti].assign(tournaments.size(), 0);
    const std::size_t variants = question_templates(query_types[ti]).size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto k = static_cast<std::size_t>(
          std::find(tournaments.begin(), tournaments.end(), rows[r].tournament) -
          tournaments.begin());
      for (std::size_t v = 0; v < variants; ++v) pools[ti][k].push_back(Item{r, v});
    }
    for (auto& pool : pools[ti]) rng.shuffle(pool);
  }

  std::vector<std::size_t> demand(query_types.size(), 0);
  for (std::size_t n : sizes) {
    const auto q = type_quotas(n, query_types.size());
    for (std::size_t ti = 0; ti < q.size(); ++ti) demand[ti] += q[ti];
  }
  for (std::size_t ti = 0; ti < query_types.size(); ++ti) {
    std::size_t supply = 0;
    for (const auto& pool : pools[ti]) supply += pool.size();
    if (supply < demand[ti]) {
      throw Error(ErrorCode::kInsufficientRows,
                  std::string(query_type_name(query_types[ti])) + " needs " +
                      std::to_string(demand[ti]) + " queries, rows provide " +
                      std::to_string(supply));
    }
  }

  std::vector<std::vector<Query>> splits;
  for (std::size_t n : sizes) {
    std::vector<Query> split;
    const auto quotas = type_quotas(n, query_types.size());
    for (std::size_t ti = 0; ti < query_types.size(); ++ti) {
      std::size_t k = 0;
      for (std::size_t taken = 0; taken < quotas[ti]; k = (k + 1) % tournaments.size()) {
        if (cursor[ti][k] >= pools[ti][k].size()) continue;
        const Item item = pools[ti][k][cursor[ti][k]++];
        const EventRow& row = rows[item.row];
        const EpochDay ts = rng.between(epoch_day(row.final_date),
                                        epoch_day(year_end_date(row.year)));
        split.push_back(make_query("train", row, query_types[ti], item.variant,
                                   civil_from_epoch_day(ts)));
        ++taken;
      }
    }
    splits.push_back(std::move(split));
  }
  return splits;
}

Dataset generate_dataset(const GenSpec& spec) {
  validate(spec);
  Dataset ds;
  ds.events = gen_event_rows(spec, spec.year_start, spec.year_end);
  const std::vector<EventRow> test_rows = gen_event_rows(spec, spec.test_year, spec.test_year);
  ds.fewshot = gen_fewshot_splits(ds.events, spec.fewshot_sizes, spec.seed, spec.query_types);
  ds.tpq = gen_tpq_pair(test_rows, spec);
  ds.events.insert(ds.events.end(), test_rows.begin(), test_rows.end());
  ds.corpus = build_corpus(ds.events, spec.passages_per_row);
  return ds;
}

}  // namespace tempret
