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

#include "tempret/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <thread>

#include "tempret/error.hpp"
#include "tempret/io.hpp"

namespace tempret {

namespace {

Error line_error(std::size_t line_no, const std::string& what) {
  return Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
}

nlohmann::json parse_line_object(std::string_view line, std::size_t line_no,
                                 std::initializer_list<const char*> fields) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw line_error(line_no, e.what());
  }
  if (!obj.is_object()) throw line_error(line_no, "expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(fields.begin(), fields.end(),
                     [&](const char* f) { return key == f; }) == fields.end()) {
      throw line_error(line_no, "unknown field \"" + key + "\"");
    }
    if (!value.is_string()) throw line_error(line_no, "field \"" + key + "\" must be a string");
  }
  for (const char* f : fields) {
    if (!obj.contains(f)) throw line_error(line_no, std::string("missing field \"") + f + "\"");
  }
  return obj;
}

}  // namespace

int recall_at_k(std::span<const ScoredPassage> results, std::string_view gold_id,
                std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "recall k must be at least 1");
  const std::size_t n = std::min(k, results.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].passage_id == gold_id) return 1;
  }
  return 0;
}

std::string normalize_answer(std::string_view s) {
  std::string cleaned;
  cleaned.reserve(s.size());
  for (unsigned char c : s) {
    if (std::ispunct(c)) continue;
    cleaned.push_back(static_cast<char>(std::tolower(c)));
  }
  std::string out;
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    while (pos < cleaned.size() && std::isspace(static_cast<unsigned char>(cleaned[pos]))) ++pos;
    std::size_t end = pos;
    while (end < cleaned.size() && !std::isspace(static_cast<unsigned char>(cleaned[end]))) ++end;
    if (end > pos) {
      const std::string_view word(cleaned.data() + pos, end - pos);
      if (word != "a" && word != "an" && word != "the") {
        if (!out.empty()) out.push_back(' ');
        out.append(word);
      }
    }
    pos = end;
  }
  return out;
}

int exact_match(std::string_view predicted, std::string_view gold) {
  return normalize_answer(predicted) == normalize_answer(gold) ? 1 : 0;
}

EvalReport aggregate(RetrievalMode mode, std::vector<QueryTrace> per_query,
                     std::optional<double> exact_match) {
  if (per_query.empty()) throw Error(ErrorCode::kEmptyQuerySet, "no queries to aggregate");
  std::size_t hits1 = 0;
  std::size_t hits5 = 0;
  for (const QueryTrace& t : per_query) {
    if (t.gold_rank && *t.gold_rank <= 1) ++hits1;
    if (t.gold_rank && *t.gold_rank <= 5) ++hits5;
  }
  const double n = static_cast<double>(per_query.size());
  EvalReport report;
  report.mode = mode;
  report.recall_at_1 = static_cast<double>(hits1) / n;
  report.recall_at_5 = static_cast<double>(hits5) / n;
  report.exact_match = exact_match;
  report.per_query = std::move(per_query);
  return report;
}

EvalReport run_eval(const Index& index, std::span<const Query> queries,
                    const RetrievalConfig& cfg, const Encoder& encoder,
                    const Predictions* predictions, unsigned threads) {
  if (queries.empty()) throw Error(ErrorCode::kEmptyQuerySet, "query set is empty");
  validate(cfg);
  std::set<std::string_view> query_ids;
  for (const Query& q : queries) {
    if (!index.corpus().find(q.gold_passage_id)) {
      throw Error(ErrorCode::kUnknownGoldPassage,
                  q.id + " -> " + q.gold_passage_id);
    }
    query_ids.insert(q.id);
  }

  std::optional<GlobalStats> global;
  if (cfg.mode == RetrievalMode::kTemporal && cfg.stats_scope == StatsScope::kGlobal &&
      index.size() > 0) {
    std::vector<TimedQuery> timed;
    timed.reserve(queries.size());
    for (const Query& q : queries) {
      timed.push_back(TimedQuery{query_text_for(q.question, q.timestamp, cfg), q.timestamp});
    }
    global = compute_global_stats(index, timed, cfg, encoder);
  }

  std::vector<QueryTrace> traces(queries.size());
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Query& q = queries[i];
      const auto results =
          retrieve(index, query_text_for(q.question, q.timestamp, cfg), q.timestamp, cfg,
                   encoder, global ? &*global : nullptr);
      QueryTrace& t = traces[i];
      t.query_id = q.id;
      for (const ScoredPassage& sp : results) {
        t.top_ids.push_back(sp.passage_id);
        if (!t.gold_rank && sp.passage_id == q.gold_passage_id) t.gold_rank = sp.rank;
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(queries.size())));
  if (threads == 1) {
    run_range(0, queries.size());
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (queries.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(queries.size(), t * chunk);
      workers.emplace_back(run_range, begin, std::min(queries.size(), begin + chunk));
    }
  }

  std::optional<double> em;
  if (predictions != nullptr) {
    for (const auto& [id, _] : *predictions) {
      if (!query_ids.contains(id)) {
        throw Error(ErrorCode::kInvalidArgument, "prediction for unknown query " + id);
      }
    }
    std::size_t matched = 0;
    std::size_t scored = 0;
    for (const Query& q : queries) {
      auto it = predictions->find(q.id);
      if (it == predictions->end()) continue;
      ++scored;
      matched += static_cast<std::size_t>(exact_match(it->second, q.answer));
    }
    if (scored > 0) em = static_cast<double>(matched) / static_cast<double>(scored);
  }
  return aggregate(cfg.mode, std::move(traces), em);
}

std::vector<Query> parse_queries(std::string_view jsonl) {
  std::vector<Query> queries;
  std::set<std::string> seen;
  const auto lines = split_lines(jsonl);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto obj = parse_line_object(
        lines[i], i + 1, {"id", "question", "timestamp", "answer", "gold_passage_id"});
    Query q;
    q.id = obj["id"].get<std::string>();
    q.question = obj["question"].get<std::string>();
    q.answer = obj["answer"].get<std::string>();
    q.gold_passage_id = obj["gold_passage_id"].get<std::string>();
    try {
      q.timestamp = parse_date(obj["timestamp"].get<std::string>());
    } catch (const Error& e) {
      throw line_error(i + 1, e.what());
    }
    if (q.id.empty()) throw line_error(i + 1, "empty id");
    if (!seen.insert(q.id).second) throw Error(ErrorCode::kDuplicateId, q.id);
    queries.push_back(std::move(q));
  }
  return queries;
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
  return parse_queries(read_file(path));
}

std::string serialize_queries(std::span<const Query> queries) {
  std::string out;
  for (const Query& q : queries) {
    nlohmann::ordered_json obj;
    obj["id"] = q.id;
    obj["question"] = q.question;
    obj["timestamp"] = format_date(q.timestamp);
    obj["answer"] = q.answer;
    obj["gold_passage_id"] = q.gold_passage_id;
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

Predictions parse_predictions(std::string_view jsonl) {
  Predictions preds;
  const auto lines = split_lines(jsonl);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto obj = parse_line_object(lines[i], i + 1, {"id", "prediction"});
    if (!preds.emplace(obj["id"].get<std::string>(), obj["prediction"].get<std::string>())
             .second) {
      throw Error(ErrorCode::kDuplicateId, obj["id"].get<std::string>());
    }
  }
  return preds;
}

Predictions load_predictions(const std::filesystem::path& path) {
  return parse_predictions(read_file(path));
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(report.mode);
  j["num_queries"] = report.per_query.size();
  j["recall_at_1"] = report.recall_at_1;
  j["recall_at_5"] = report.recall_at_5;
  j["exact_match"] = report.exact_match ? nlohmann::ordered_json(*report.exact_match)
                                        : nlohmann::ordered_json(nullptr);
  auto& per_query = j["per_query"] = nlohmann::ordered_json::array();
  for (const QueryTrace& t : report.per_query) {
    nlohmann::ordered_json q;
    q["query_id"] = t.query_id;
    q["gold_rank"] = t.gold_rank ? nlohmann::ordered_json(*t.gold_rank)
                                 : nlohmann::ordered_json(nullptr);
    q["top_ids"] = t.top_ids;
    per_query.push_back(std::move(q));
  }
  return j;
}

std::string format_recall_table(std::span<const NamedReport> reports) {
  std::vector<std::string> sets;
  std::vector<RetrievalMode> modes;
  for (const NamedReport& r : reports) {
    if (std::find(sets.begin(), sets.end(), r.query_set) == sets.end()) sets.push_back(r.query_set);
    if (std::find(modes.begin(), modes.end(), r.report.mode) == modes.end()) {
      modes.push_back(r.report.mode);
    }
  }
  char buf[64];
  std::string out = "Mode          ";
  for (const std::string& s : sets) {
    std::snprintf(buf, sizeof(buf), " | %-19.19s", s.c_str());
    out += buf;
  }
  out += "\n              ";
  for (std::size_t i = 0; i < sets.size(); ++i) out += " | Recall@1  Recall@5";
  out += "\n";
  for (RetrievalMode m : modes) {
    std::snprintf(buf, sizeof(buf), "%-14s", std::string(mode_name(m)).c_str());
    out += buf;
    for (const std::string& s : sets) {
      auto it = std::find_if(reports.begin(), reports.end(), [&](const NamedReport& r) {
        return r.query_set == s && r.report.mode == m;
      });
      if (it == reports.end()) {
        out += " |      -         -  ";
      } else {
        std::snprintf(buf, sizeof(buf), " |   %6.4f    %6.4f", it->report.recall_at_1,
                      it->report.recall_at_5);
        out += buf;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace tempret
