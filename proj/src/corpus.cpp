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

#include "tempret/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "tempret/error.hpp"
#include "tempret/io.hpp"
#include "tempret/templates.hpp"

namespace tempret {

namespace {

constexpr std::string_view kMonthNames[] = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

int parse_digits(std::string_view s) {
  int value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return value;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

Error line_error(std::size_t line_no, const std::string& what) {
  return Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  return month == 2 && is_leap_year(year) ? 29 : kDays[month - 1];
}

bool is_valid_date(const CivilDate& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

CivilDate parse_date(std::string_view s) {
  auto digits = [&](std::size_t pos, std::size_t len) {
    return std::all_of(s.begin() + pos, s.begin() + pos + len,
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !digits(0, 4) ||
      !digits(5, 2) || !digits(8, 2)) {
    throw Error(ErrorCode::kMalformedDate,
                "expected YYYY-MM-DD, got \"" + std::string(s) + "\"");
  }
  CivilDate d{parse_digits(s.substr(0, 4)), parse_digits(s.substr(5, 2)),
              parse_digits(s.substr(8, 2))};
  if (!is_valid_date(d)) {
    throw Error(ErrorCode::kInvalidDate, "no such date " + std::string(s));
  }
  return d;
}

std::string format_date(const CivilDate& d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string format_date_long(const CivilDate& d) {
  return std::string(kMonthNames[d.month - 1]) + " " + std::to_string(d.day) +
         ", " + std::to_string(d.year);
}

// Days-from-civil over the proleptic Gregorian calendar, 400-year eras.
EpochDay epoch_day(const CivilDate& d) {
  const std::int64_t y = static_cast<std::int64_t>(d.year) - (d.month <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (d.month + 9) % 12;  // March == 0
  const std::int64_t doy = (153 * mp + 2) / 5 + d.day - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

CivilDate civil_from_epoch_day(EpochDay days) {
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  const int year = static_cast<int>(yoe + era * 400 + (month <= 2 ? 1 : 0));
  return CivilDate{year, month, day};
}

void validate_event_row(const EventRow& row) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kInvalidEventRow,
                row.tournament + " " + row.category + " " +
                    std::to_string(row.year) + ": " + what);
  };
  if (is_blank(row.tournament) || is_blank(row.category) ||
      is_blank(row.winner) || is_blank(row.runner_up) || is_blank(row.score)) {
    fail("empty field");
  }
  if (!is_valid_date(row.final_date)) fail("invalid final_date");
  if (row.final_date.year != row.year) {
    fail("final_date " + format_date(row.final_date) + " is outside the event year");
  }
}

std::string slugify(std::string_view s) {
  std::string out;
  bool pending_dash = false;
  for (unsigned char c : s) {
    if (c == '\'') continue;
    if (std::isalnum(c)) {
      if (pending_dash && !out.empty()) out.push_back('-');
      pending_dash = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_dash = true;
    }
  }
  return out;
}

std::string passage_id_for(const EventRow& row, std::string_view template_id) {
  return slugify(row.tournament) + "-" + slugify(row.category) + "-" +
         std::to_string(row.year) + "-" + std::string(template_id);
}

Passage row_to_passage(const EventRow& row, std::string_view template_id) {
  const PassageTemplate* tmpl = find_passage_template(template_id);
  if (tmpl == nullptr) {
    throw Error(ErrorCode::kUnknownTemplate, std::string(template_id));
  }
  validate_event_row(row);
  return Passage{passage_id_for(row, template_id), render_template(tmpl->text, row),
                 row.final_date};
}

Corpus::Corpus(std::vector<Passage> passages) : passages_(std::move(passages)) {
  by_id_.reserve(passages_.size());
  for (std::size_t i = 0; i < passages_.size(); ++i) {
    const Passage& p = passages_[i];
    if (p.id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty passage id");
    if (is_blank(p.text)) {
      throw Error(ErrorCode::kInvalidArgument, "passage " + p.id + " has empty text");
    }
    if (!is_valid_date(p.date)) {
      throw Error(ErrorCode::kInvalidArgument, "passage " + p.id + " has an invalid date");
    }
    if (!by_id_.emplace(p.id, i).second) {
      throw Error(ErrorCode::kDuplicateId, p.id);
    }
  }
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Corpus parse_corpus(std::string_view jsonl) {
  std::vector<Passage> passages;
  std::unordered_map<std::string, std::size_t> seen;
  const auto lines = split_lines(jsonl);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw line_error(line_no, e.what());
    }
    if (!obj.is_object()) throw line_error(line_no, "expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
      if (key != "id" && key != "text" && key != "date") {
        throw line_error(line_no, "unknown field \"" + key + "\"");
      }
      if (!value.is_string()) throw line_error(line_no, "field \"" + key + "\" must be a string");
    }
    for (const char* key : {"id", "text", "date"}) {
      if (!obj.contains(key)) {
        throw line_error(line_no, std::string("missing field \"") + key + "\"");
      }
    }
    Passage p;
    p.id = obj["id"].get<std::string>();
    p.text = obj["text"].get<std::string>();
    if (p.id.empty()) throw line_error(line_no, "empty id");
    if (is_blank(p.text)) throw line_error(line_no, "empty text");
    try {
      p.date = parse_date(obj["date"].get<std::string>());
    } catch (const Error& e) {
      throw line_error(line_no, e.what());
    }
    if (!seen.emplace(p.id, line_no).second) {
      throw Error(ErrorCode::kDuplicateId,
                  p.id + " (line " + std::to_string(line_no) + ")");
    }
    passages.push_back(std::move(p));
  }
  return Corpus(std::move(passages));
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const Passage& p : corpus.passages()) {
    nlohmann::ordered_json obj;
    obj["id"] = p.id;
    obj["text"] = p.text;
    obj["date"] = format_date(p.date);
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, serialize_corpus(corpus));
}

std::string corpus_hash(const Corpus& corpus) {
  return sha256_hex(serialize_corpus(corpus));
}

// --- event table CSV --------------------------------------------------------

namespace {

constexpr std::string_view kEventCsvHeader =
    "tournament,category,year,winner,runner_up,score,final_date";

// RFC 4180 fields: optional double quotes, "" escapes a quote.
std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw line_error(line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::vector<EventRow> parse_event_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines[0] != kEventCsvHeader) {
    throw Error(ErrorCode::kParse,
                "line 1: expected header \"" + std::string(kEventCsvHeader) + "\"");
  }
  std::vector<EventRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto f = split_csv_record(lines[i], line_no);
    if (f.size() != 7) {
      throw line_error(line_no, "expected 7 fields, got " + std::to_string(f.size()));
    }
    EventRow row;
    row.tournament = f[0];
    row.category = f[1];
    const auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), row.year);
    if (ec != std::errc() || ptr != f[2].data() + f[2].size()) {
      throw line_error(line_no, "bad year \"" + f[2] + "\"");
    }
    row.winner = f[3];
    row.runner_up = f[4];
    row.score = f[5];
    try {
      row.final_date = parse_date(f[6]);
      validate_event_row(row);
    } catch (const Error& e) {
      throw line_error(line_no, e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EventRow> load_event_csv(const std::filesystem::path& path) {
  return parse_event_csv(read_file(path));
}

std::string serialize_event_csv(std::span<const EventRow> rows) {
  std::string out(kEventCsvHeader);
  out.push_back('\n');
  for (const EventRow& r : rows) {
    out += csv_field(r.tournament) + "," + csv_field(r.category) + "," +
           std::to_string(r.year) + "," + csv_field(r.winner) + "," +
           csv_field(r.runner_up) + "," + csv_field(r.score) + "," +
           format_date(r.final_date) + "\n";
  }
  return out;
}

}  // namespace tempret
