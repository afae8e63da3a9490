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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "tempret/error.hpp"
#include "tempret/io.hpp"
#include "tempret/templates.hpp"

namespace tempret {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

EventRow us_open_2019() {
  return EventRow{"US Open", "women's singles", 2019, "W1", "R1", "6-3 7-5",
                  CivilDate{2019, 9, 7}};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("tempret_corpus_" + name);
  write_file(path, contents);
  return path;
}

TEST(ParseDate, SplitsFields) {
  EXPECT_EQ(parse_date("2019-09-07"), (CivilDate{2019, 9, 7}));
  EXPECT_EQ(parse_date("1970-01-01"), (CivilDate{1970, 1, 1}));
  EXPECT_EQ(epoch_day(parse_date("1970-01-01")), 0);
}

TEST(ParseDate, RejectsBadShapeAndBadDates) {
  EXPECT_EQ(code_of([] { parse_date("2019-13-01"); }), ErrorCode::kInvalidDate);
  EXPECT_EQ(code_of([] { parse_date("2019-02-30"); }), ErrorCode::kInvalidDate);
  EXPECT_EQ(code_of([] { parse_date("2019-00-10"); }), ErrorCode::kInvalidDate);
  EXPECT_EQ(code_of([] { parse_date("2018-02-29"); }), ErrorCode::kInvalidDate);
  EXPECT_NO_THROW(parse_date("2020-02-29"));
  EXPECT_EQ(code_of([] { parse_date("2019-9-07"); }), ErrorCode::kMalformedDate);
  EXPECT_EQ(code_of([] { parse_date("2019/09/07"); }), ErrorCode::kMalformedDate);
  EXPECT_EQ(code_of([] { parse_date(" 2019-09-07"); }), ErrorCode::kMalformedDate);
  EXPECT_EQ(code_of([] { parse_date(""); }), ErrorCode::kMalformedDate);
  EXPECT_EQ(code_of([] { parse_date("2019-09-0a"); }), ErrorCode::kMalformedDate);
}

TEST(EpochDay, KnownValues) {
  EXPECT_EQ(epoch_day({1970, 1, 1}), 0);
  EXPECT_EQ(epoch_day({1970, 1, 2}), 1);
  EXPECT_EQ(epoch_day({1969, 12, 31}), -1);
  // Frozen from oracle::count_days_from_1970.
  EXPECT_EQ(epoch_day({2020, 1, 1}), 18262);
  EXPECT_EQ(oracle::count_days_from_1970(2020, 1, 1), 18262);
  EXPECT_EQ(epoch_day({2020, 1, 1}) - epoch_day({2019, 9, 8}), 115);
}

TEST(EpochDay, MatchesDayCountingOracleOverEveryDay) {
  for (int y = 1600; y <= 2400; ++y) {
    for (int m = 1; m <= 12; ++m) {
      for (int d = 1; d <= days_in_month(y, m); ++d) {
        const CivilDate date{y, m, d};
        if (d == 1 || d == days_in_month(y, m)) {
          ASSERT_EQ(epoch_day(date), oracle::count_days_from_1970(y, m, d)) << format_date(date);
        }
      }
    }
  }
}

TEST(EpochDay, StrictlyMonotoneAndInvertible) {
  EpochDay prev = epoch_day({1599, 12, 31});
  for (int y = 1600; y <= 2400; ++y) {
    for (int m = 1; m <= 12; ++m) {
      for (int d = 1; d <= days_in_month(y, m); ++d) {
        const CivilDate date{y, m, d};
        const EpochDay e = epoch_day(date);
        ASSERT_EQ(e, prev + 1) << format_date(date);
        ASSERT_EQ(civil_from_epoch_day(e), date);
        prev = e;
      }
    }
  }
}

TEST(EpochDay, OrderPropertyOnRandomDates) {
  std::mt19937_64 rng(11);
  auto random_date = [&] {
    const int y = 1000 + static_cast<int>(rng() % 2000);
    const int m = 1 + static_cast<int>(rng() % 12);
    const int d = 1 + static_cast<int>(rng() % days_in_month(y, m));
    return CivilDate{y, m, d};
  };
  for (int i = 0; i < 20000; ++i) {
    const CivilDate a = random_date();
    const CivilDate b = random_date();
    ASSERT_EQ(epoch_day(a) < epoch_day(b), a < b);
    ASSERT_EQ(epoch_day(a), oracle::count_days_from_1970(a.year, a.month, a.day));
    ASSERT_EQ(parse_date(format_date(a)), a);
  }
}

TEST(FormatDate, LongForm) {
  EXPECT_EQ(format_date_long({2019, 9, 7}), "September 7, 2019");
  EXPECT_EQ(format_date({987, 3, 4}), "0987-03-04");
}

TEST(RowToPassage, InstantiatesTemplate) {
  const Passage p = row_to_passage(us_open_2019(), "t0");
  EXPECT_EQ(p.id, "us-open-womens-singles-2019-t0");
  EXPECT_EQ(p.date, (CivilDate{2019, 9, 7}));
  for (const char* needle :
       {"US Open", "women's singles", "2019", "W1", "R1", "6-3 7-5", "2019-09-07",
        "September 7, 2019", "W1 and R1"}) {
    EXPECT_NE(p.text.find(needle), std::string::npos) << needle;
  }
}

TEST(RowToPassage, DeterministicAcrossCalls) {
  for (const PassageTemplate& t : passage_templates()) {
    EXPECT_EQ(row_to_passage(us_open_2019(), t.id), row_to_passage(us_open_2019(), t.id));
  }
}

TEST(RowToPassage, EveryTemplateCarriesEveryField) {
  const EventRow row = us_open_2019();
  for (const PassageTemplate& t : passage_templates()) {
    const Passage p = row_to_passage(row, t.id);
    for (QueryType type : all_query_types()) {
      EXPECT_NE(p.text.find(answer_for(row, type)), std::string::npos) << t.id;
    }
    EXPECT_NE(p.text.find("2019-09-07"), std::string::npos) << t.id;
    EXPECT_NE(p.text.find("September 7, 2019"), std::string::npos) << t.id;
    EXPECT_NE(p.text.find("US Open"), std::string::npos) << t.id;
  }
}

TEST(RowToPassage, Errors) {
  EXPECT_EQ(code_of([] { row_to_passage(us_open_2019(), "t99"); }), ErrorCode::kUnknownTemplate);
  EventRow bad = us_open_2019();
  bad.final_date = {2020, 1, 3};
  EXPECT_EQ(code_of([&] { validate_event_row(bad); }), ErrorCode::kInvalidEventRow);
  EXPECT_EQ(code_of([&] { row_to_passage(bad, "t0"); }), ErrorCode::kInvalidEventRow);
}

TEST(Slugify, Basics) {
  EXPECT_EQ(slugify("Women's Singles"), "womens-singles");
  EXPECT_EQ(slugify("  Roland   Garros!"), "roland-garros");
}

TEST(Corpus, RejectsDuplicatesAndEmptyText) {
  const CivilDate d{2019, 1, 1};
  EXPECT_EQ(code_of([&] { Corpus({{"a", "x", d}, {"a", "y", d}}); }), ErrorCode::kDuplicateId);
  EXPECT_EQ(code_of([&] { Corpus({{"a", "  \t", d}}); }), ErrorCode::kInvalidArgument);
  const Corpus c({{"a", "x", d}, {"b", "y", d}});
  EXPECT_EQ(c.find("b"), 1u);
  EXPECT_FALSE(c.find("c").has_value());
}

TEST(LoadCorpus, WellFormedFile) {
  const auto path = temp_file("ok.jsonl",
                              "{\"id\":\"p1\",\"text\":\"first\",\"date\":\"2019-01-27\"}\n"
                              "{\"id\":\"p2\",\"text\":\"second\",\"date\":\"2018-09-08\"}\n");
  const Corpus c = load_corpus(path);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at(0).id, "p1");
  EXPECT_EQ(c.at(1).date, (CivilDate{2018, 9, 8}));
  EXPECT_EQ(parse_corpus(serialize_corpus(c)).passages()[1], c.at(1));
}

TEST(LoadCorpus, DuplicateIdOnSecondLine) {
  const auto path = temp_file("dup.jsonl",
                              "{\"id\":\"p1\",\"text\":\"a\",\"date\":\"2019-01-27\"}\n"
                              "{\"id\":\"p1\",\"text\":\"b\",\"date\":\"2019-01-28\"}\n");
  try {
    load_corpus(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadCorpus, EmptyFileIsEmptyCorpus) {
  EXPECT_TRUE(load_corpus(temp_file("empty.jsonl", "")).empty());
}

TEST(LoadCorpus, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& body) {
    try {
      parse_corpus(body);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string good = "{\"id\":\"p1\",\"text\":\"a\",\"date\":\"2019-01-27\"}\n";
  EXPECT_NE(line_of(good + "{not json}\n").find("line 2"), std::string::npos);
  EXPECT_NE(line_of(good + "{\"id\":\"p2\",\"text\":\"a\",\"date\":\"2019-01-27\",\"x\":\"1\"}\n")
                .find("unknown field"),
            std::string::npos);
  EXPECT_NE(line_of("{\"id\":\"p2\",\"text\":\"a\"}\n").find("missing field"), std::string::npos);
  EXPECT_NE(line_of("{\"id\":\"p2\",\"text\":\"a\",\"date\":\"2019-02-30\"}\n").find("line 1"),
            std::string::npos);
  EXPECT_NE(line_of("{\"id\":\"p2\",\"text\":\" \",\"date\":\"2019-02-03\"}\n").find("empty text"),
            std::string::npos);
}

TEST(LoadCorpus, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_corpus("/nonexistent/tempret/corpus.jsonl"); }), ErrorCode::kIo);
}

TEST(EventCsv, RoundTripWithQuoting) {
  std::vector<EventRow> rows = {us_open_2019()};
  rows.push_back(rows[0]);
  rows[1].winner = "Smith, \"Jr\"";
  rows[1].year = 2018;
  rows[1].final_date = {2018, 9, 8};
  EXPECT_EQ(parse_event_csv(serialize_event_csv(rows)), rows);
}

TEST(EventCsv, RejectsBadHeaderAndRows) {
  EXPECT_EQ(code_of([] { parse_event_csv("a,b\n"); }), ErrorCode::kParse);
  const std::string header = "tournament,category,year,winner,runner_up,score,final_date\n";
  EXPECT_EQ(code_of([&] { parse_event_csv(header + "US Open,ws,2019,a,b,6-0\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { parse_event_csv(header + "US Open,ws,2018,a,b,6-0,2019-09-07\n"); }),
            ErrorCode::kParse);
}

}  // namespace
}  // namespace tempret
