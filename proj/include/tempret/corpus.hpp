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

// Timestamped passages, the document index's source of truth.
//
// Dates are proleptic Gregorian civil dates; all time arithmetic happens on
// integer epoch days (days since 1970-01-01), which is the resolution of the
// YYYY-MM-DD metadata attached to every passage.

#ifndef TEMPRET_CORPUS_HPP_
#define TEMPRET_CORPUS_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tempret {

using EpochDay = std::int64_t;

struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  friend auto operator<=>(const CivilDate&, const CivilDate&) = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const CivilDate& d);

// Strict "YYYY-MM-DD" parse. Throws kMalformedDate on shape errors and
// kInvalidDate for out-of-range fields (month 13, Feb 30, ...).
CivilDate parse_date(std::string_view s);
std::string format_date(const CivilDate& d);
// "September 7, 2019".
std::string format_date_long(const CivilDate& d);

EpochDay epoch_day(const CivilDate& d);
CivilDate civil_from_epoch_day(EpochDay days);

struct Passage {
  std::string id;
  std::string text;
  CivilDate date;

  friend bool operator==(const Passage&, const Passage&) = default;
};

// One final of one tournament draw in one year.
struct EventRow {
  std::string tournament;
  std::string category;
  int year = 0;
  std::string winner;
  std::string runner_up;
  std::string score;
  CivilDate final_date;

  friend bool operator==(const EventRow&, const EventRow&) = default;
};

// Throws kInvalidEventRow unless final_date lies in `year` and the text
// fields are non-empty.
void validate_event_row(const EventRow& row);

// Lowercase, apostrophes dropped, other non-alphanumeric runs collapsed
// to '-'. "Women's Singles" -> "womens-singles".
std::string slugify(std::string_view s);

std::string passage_id_for(const EventRow& row, std::string_view template_id);

// Pure function of (row, template_id). Throws kUnknownTemplate.
Passage row_to_passage(const EventRow& row, std::string_view template_id);

// Immutable, validated collection of passages. Position is the stable
// handle used by the index; ids are unique.
class Corpus {
 public:
  Corpus() = default;
  // Throws kDuplicateId or kInvalidArgument (empty text / invalid date).
  explicit Corpus(std::vector<Passage> passages);

  std::size_t size() const { return passages_.size(); }
  bool empty() const { return passages_.empty(); }
  const Passage& at(std::size_t pos) const { return passages_.at(pos); }
  std::span<const Passage> passages() const { return passages_; }
  std::optional<std::size_t> find(std::string_view id) const;

 private:
  std::vector<Passage> passages_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// JSON-lines, one {"id","text","date"} object per line; unknown fields are
// rejected. Errors: kIo, kParse (message carries the 1-based line number),
// kDuplicateId.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::string_view jsonl);
std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// SHA-256 over serialize_corpus(); identifies the corpus an index was
// built from.
std::string corpus_hash(const Corpus& corpus);

// CSV with header tournament,category,year,winner,runner_up,score,final_date.
std::vector<EventRow> parse_event_csv(std::string_view csv);
std::vector<EventRow> load_event_csv(const std::filesystem::path& path);
std::string serialize_event_csv(std::span<const EventRow> rows);

}  // namespace tempret

#endif  // TEMPRET_CORPUS_HPP_
