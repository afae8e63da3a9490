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

// Fixed passage and question wording. All prose lives in templates.cpp so a
// wording change is a single, versioned edit.
//
// Placeholders: {tournament} {category} {year} {winner} {runner_up} {score}
// {date} (YYYY-MM-DD) {date_long} ("September 7, 2019").
//
// Every passage template contains "{winner} and {runner_up}" and {score}
// verbatim, so every generated answer appears in its gold passage.

#ifndef TEMPRET_TEMPLATES_HPP_
#define TEMPRET_TEMPLATES_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tempret/corpus.hpp"

namespace tempret {

inline constexpr std::string_view kTemplateVersion = "1";

enum class QueryType { kWinner, kRunnerUp, kFinalists, kScore };

std::string_view query_type_name(QueryType t);
std::optional<QueryType> parse_query_type(std::string_view name);
std::span<const QueryType> all_query_types();

struct PassageTemplate {
  std::string_view id;
  std::string_view text;
};

std::span<const PassageTemplate> passage_templates();
const PassageTemplate* find_passage_template(std::string_view id);

std::span<const std::string_view> question_templates(QueryType type);

// Substitutes placeholders from `row`. Unknown placeholders are left as-is.
std::string render_template(std::string_view tmpl, const EventRow& row);

std::string answer_for(const EventRow& row, QueryType type);

}  // namespace tempret

#endif  // TEMPRET_TEMPLATES_HPP_
