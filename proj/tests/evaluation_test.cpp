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

#include <gtest/gtest.h>

#include "tempret/datagen.hpp"
#include "tempret/error.hpp"

namespace tempret {
namespace {

std::vector<ScoredPassage> ranked(std::initializer_list<const char*> ids) {
  std::vector<ScoredPassage> out;
  std::size_t rank = 1;
  for (const char* id : ids) {
    ScoredPassage sp;
    sp.passage_id = id;
    sp.rank = rank++;
    out.push_back(sp);
  }
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(RecallAtK, Examples) {
  const auto r = ranked({"g", "a", "b"});
  EXPECT_EQ(recall_at_k(r, "g", 1), 1);
  const auto r3 = ranked({"a", "b", "g", "c"});
  EXPECT_EQ(recall_at_k(r3, "g", 1), 0);
  EXPECT_EQ(recall_at_k(r3, "g", 5), 1);
  EXPECT_EQ(recall_at_k({}, "g", 1), 0);
  EXPECT_EQ(recall_at_k({}, "g", 5), 0);
  EXPECT_THROW(recall_at_k(r, "g", 0), Error);
}

TEST(ExactMatch, Examples) {
  EXPECT_EQ(exact_match("Rafael Nadal", "rafael  nadal"), 1);
  EXPECT_EQ(exact_match("Nadal", "Rafael Nadal"), 0);
  EXPECT_EQ(exact_match("the US Open", "US Open"), 1);
  EXPECT_EQ(exact_match("6-4, 6-3!", "6-4 6-3"), 1);
  EXPECT_EQ(exact_match("6-4 6-3", "6-4 6-2"), 0);
  EXPECT_EQ(exact_match("Kara Velden.", "kara velden"), 1);
}

TEST(ExactMatch, NormalizationIsIdempotent) {
  for (const char* s : {"The  Quick, brown fox!", "An apple a day", "  x  ", "", "Ana's A-Team"}) {
    const std::string once = normalize_answer(s);
    EXPECT_EQ(normalize_answer(once), once);
    EXPECT_EQ(exact_match(s, s), 1);
  }
  EXPECT_EQ(normalize_answer("The  Quick, brown fox!"), "quick brown fox");
}

TEST(Aggregate, FourQueryFixture) {
  std::vector<QueryTrace> traces = {
      {"q1", 1, {}}, {"q2", 1, {}}, {"q3", 3, {}}, {"q4", std::nullopt, {}}};
  const EvalReport r = aggregate(RetrievalMode::kTemporal, traces);
  EXPECT_DOUBLE_EQ(r.recall_at_1, 0.5);
  EXPECT_DOUBLE_EQ(r.recall_at_5, 0.75);
  EXPECT_FALSE(r.exact_match.has_value());
  EXPECT_EQ(code_of([] { aggregate(RetrievalMode::kTemporal, {}); }), ErrorCode::kEmptyQuerySet);
}

class EvalOnGenerated : public ::testing::Test {
 protected:
  void SetUp() override {
    GenSpec spec;
    spec.year_start = 2012;
    spec.year_end = 2018;
    spec.tpq_size = 16;
    spec.fewshot_sizes = {8};
    data_ = generate_dataset(spec);
    index_ = build_index(data_.corpus, enc_);
  }
  HashingEncoder enc_;
  Dataset data_;
  Index index_;
};

TEST_F(EvalOnGenerated, RecallMatchesPerQueryTraces) {
  for (RetrievalMode mode : {RetrievalMode::kTemporal, RetrievalMode::kSemanticOnly}) {
    RetrievalConfig cfg;
    cfg.mode = mode;
    const EvalReport r = run_eval(index_, data_.tpq.tpq_late, cfg, enc_);
    ASSERT_EQ(r.per_query.size(), data_.tpq.tpq_late.size());
    double at1 = 0, at5 = 0;
    for (const auto& t : r.per_query) {
      at1 += t.gold_rank && *t.gold_rank <= 1;
      at5 += t.gold_rank && *t.gold_rank <= 5;
    }
    EXPECT_DOUBLE_EQ(r.recall_at_1, at1 / r.per_query.size());
    EXPECT_DOUBLE_EQ(r.recall_at_5, at5 / r.per_query.size());
    EXPECT_LE(r.recall_at_1, r.recall_at_5);
    EXPECT_EQ(r.mode, mode);
  }
}

TEST_F(EvalOnGenerated, TemporalBeatsBaselineOnShiftedTimestamps) {
  RetrievalConfig cfg;
  const EvalReport t = run_eval(index_, data_.tpq.tpq_late, cfg, enc_);
  cfg.mode = RetrievalMode::kSemanticOnly;
  const EvalReport s = run_eval(index_, data_.tpq.tpq_late, cfg, enc_);
  EXPECT_GT(t.recall_at_1, s.recall_at_1);
}

TEST_F(EvalOnGenerated, ThreadCountDoesNotChangeReport) {
  const RetrievalConfig cfg;
  const auto a = report_to_json(run_eval(index_, data_.tpq.tpq_early, cfg, enc_, nullptr, 1));
  const auto b = report_to_json(run_eval(index_, data_.tpq.tpq_early, cfg, enc_, nullptr, 3));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(EvalOnGenerated, ExactMatchOverSuppliedPredictions) {
  const auto& qs = data_.tpq.tpq_late;
  Predictions p;
  p[qs[0].id] = qs[0].answer;
  p[qs[1].id] = "nobody";
  const EvalReport r = run_eval(index_, qs, RetrievalConfig{}, enc_, &p);
  ASSERT_TRUE(r.exact_match.has_value());
  EXPECT_DOUBLE_EQ(*r.exact_match, 0.5);
  p["no-such-query"] = "x";
  EXPECT_EQ(code_of([&] { run_eval(index_, qs, RetrievalConfig{}, enc_, &p); }),
            ErrorCode::kInvalidArgument);
}

TEST_F(EvalOnGenerated, Errors) {
  EXPECT_EQ(code_of([&] { run_eval(index_, {}, RetrievalConfig{}, enc_); }),
            ErrorCode::kEmptyQuerySet);
  std::vector<Query> qs = {data_.tpq.tpq_late[0]};
  qs[0].gold_passage_id = "missing";
  EXPECT_EQ(code_of([&] { run_eval(index_, qs, RetrievalConfig{}, enc_); }),
            ErrorCode::kUnknownGoldPassage);
}

TEST(Queries, RoundTripAndErrors) {
  const std::vector<Query> qs = {
      {"q1", "Who won?", {2019, 12, 31}, "Kara Velden", "p1"},
      {"q2", "Who lost?", {2020, 1, 1}, "Mira Tosk", "p2"}};
  EXPECT_EQ(parse_queries(serialize_queries(qs)), qs);
  EXPECT_EQ(code_of([] {
              parse_queries(R"({"id":"a","question":"q","timestamp":"2019-01-01","answer":"x",)"
                            R"("gold_passage_id":"p","extra":1})");
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { parse_queries(serialize_queries(qs) + serialize_queries(qs)); }),
            ErrorCode::kDuplicateId);
  EXPECT_EQ(code_of([] {
              parse_queries(R"({"id":"a","question":"q","timestamp":"2019-02-30","answer":"x",)"
                            R"("gold_passage_id":"p"})");
            }),
            ErrorCode::kParse);
}

TEST(Predictions, Parse) {
  const Predictions p = parse_predictions(
      "{\"id\":\"q1\",\"prediction\":\"A\"}\n{\"id\":\"q2\",\"prediction\":\"B\"}\n");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.at("q2"), "B");
}

TEST(RecallTable, ListsModesAndSets) {
  EvalReport t = aggregate(RetrievalMode::kTemporal, {{"a", 1, {}}});
  EvalReport s = aggregate(RetrievalMode::kSemanticOnly, {{"a", std::nullopt, {}}});
  const std::vector<NamedReport> reports = {
      {"tpq_late", t}, {"tpq_late", s}};
  const std::string table = format_recall_table(reports);
  EXPECT_NE(table.find("tpq_late"), std::string::npos);
  EXPECT_NE(table.find("temporal"), std::string::npos);
  EXPECT_NE(table.find("semantic_only"), std::string::npos);
  EXPECT_NE(table.find("1.0000"), std::string::npos);
}

}  // namespace
}  // namespace tempret
