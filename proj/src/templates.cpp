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

#include "tempret/templates.hpp"

#include <array>

namespace tempret {

namespace {

constexpr std::array<PassageTemplate, 6> kPassageTemplates = {{
    {"t0",
     "{year} {tournament} {category} final. The {tournament} {category} final, played on "
     "{date_long} ({date}), was contested by {winner} and {runner_up}; {winner} won "
     "the {year} {tournament} {category} title {score} to become {tournament} {category} "
     "champion."},
    {"t1",
     "{winner} and {runner_up} met in the {category} final of the {year} "
     "{tournament} on {date_long} ({date}). {winner} claimed the championship "
     "{score} and {runner_up} finished as runner-up."},
    {"t2",
     "{tournament} {year}, {category}: champion {winner}, runner-up "
     "{runner_up}, final score {score}. The finalists {winner} and {runner_up} "
     "played the final on {date_long} ({date})."},
    {"t3",
     "On {date_long} ({date}), {winner} defeated {runner_up} {score} to win "
     "the {year} {tournament} {category} title. Finalists: {winner} and "
     "{runner_up}."},
    {"t4",
     "In the {category} draw of the {tournament} in {year}, the final between "
     "{winner} and {runner_up} ended {score} in favour of {winner}. Match date: "
     "{date_long} ({date})."},
    {"t5",
     "{year} {tournament} {category} results. Winner: {winner}. Runner-up: "
     "{runner_up}. Score: {score}. Finalists {winner} and {runner_up} contested "
     "the final on {date_long} ({date})."},
}};

constexpr std::array<std::string_view, 4> kWinnerQuestions = {
    "Who won the {tournament} {category} final?",
    "Who was the champion of the {tournament} {category}?",
    "Who took the {tournament} {category} title?",
    "Who is the winner of the {tournament} {category}?"};
constexpr std::array<std::string_view, 4> kRunnerUpQuestions = {
    "Who was the runner-up in the {tournament} {category} final?",
    "Who lost the {tournament} {category} final?",
    "Who finished second at the {tournament} {category}?",
    "Who was beaten in the {tournament} {category} final?"};
constexpr std::array<std::string_view, 4> kFinalistsQuestions = {
    "Who were the finalists of the {tournament} {category}?",
    "Which two players contested the {tournament} {category} final?",
    "Who played in the {tournament} {category} final?",
    "Who met in the final of the {tournament} {category}?"};
constexpr std::array<std::string_view, 4> kScoreQuestions = {
    "What was the score of the {tournament} {category} final?",
    "What was the final score in the {tournament} {category}?",
    "How did the {tournament} {category} final end?",
    "What was the scoreline of the {tournament} {category} final?"};

constexpr std::array<QueryType, 4> kAllQueryTypes = {
    QueryType::kWinner, QueryType::kRunnerUp, QueryType::kFinalists,
    QueryType::kScore};

}  // namespace

std::string_view query_type_name(QueryType t) {
  switch (t) {
    case QueryType::kWinner: return "winner";
    case QueryType::kRunnerUp: return "runner_up";
    case QueryType::kFinalists: return "finalists";
    case QueryType::kScore: return "score";
  }
  return "winner";
}

std::optional<QueryType> parse_query_type(std::string_view name) {
  for (QueryType t : kAllQueryTypes) {
    if (query_type_name(t) == name) return t;
  }
  return std::nullopt;
}

std::span<const QueryType> all_query_types() { return kAllQueryTypes; }

std::span<const PassageTemplate> passage_templates() { return kPassageTemplates; }

const PassageTemplate* find_passage_template(std::string_view id) {
  for (const PassageTemplate& t : kPassageTemplates) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

std::span<const std::string_view> question_templates(QueryType type) {
  switch (type) {
    case QueryType::kWinner: return kWinnerQuestions;
    case QueryType::kRunnerUp: return kRunnerUpQuestions;
    case QueryType::kFinalists: return kFinalistsQuestions;
    case QueryType::kScore: return kScoreQuestions;
  }
  return kWinnerQuestions;
}

std::string render_template(std::string_view tmpl, const EventRow& row) {
  std::string out;
  out.reserve(tmpl.size() + 64);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find('{', pos);
    const std::size_t close =
        open == std::string_view::npos ? open : tmpl.find('}', open);
    if (close == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::string_view key = tmpl.substr(open + 1, close - open - 1);
    if (key == "tournament") out += row.tournament;
    else if (key == "category") out += row.category;
    else if (key == "year") out += std::to_string(row.year);
    else if (key == "winner") out += row.winner;
    else if (key == "runner_up") out += row.runner_up;
    else if (key == "score") out += row.score;
    else if (key == "date") out += format_date(row.final_date);
    else if (key == "date_long") out += format_date_long(row.final_date);
    else out.append(tmpl.substr(open, close - open + 1));
    pos = close + 1;
  }
  return out;
}

std::string answer_for(const EventRow& row, QueryType type) {
  switch (type) {
    case QueryType::kWinner: return row.winner;
    case QueryType::kRunnerUp: return row.runner_up;
    case QueryType::kFinalists: return row.winner + " and " + row.runner_up;
    case QueryType::kScore: return row.score;
  }
  return row.winner;
}

}  // namespace tempret
