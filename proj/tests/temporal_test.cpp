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

#include "tempret/temporal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tempret/error.hpp"

namespace tempret {
namespace {

TEST(RawTemporalScore, Examples) {
  const TemporalConfig cfg;
  EXPECT_DOUBLE_EQ(raw_temporal_score(101, 100, cfg), 1.0);
  const EpochDay qt = epoch_day({2020, 1, 1});
  const EpochDay dt = epoch_day({2019, 9, 8});
  EXPECT_NEAR(raw_temporal_score(qt, dt, cfg), 1.0 / 115.0, 1e-9);
  EXPECT_NEAR(raw_temporal_score(qt, dt, cfg), 0.0086957, 1e-7);
  // Same-day documents clamp to min_delta_days.
  EXPECT_DOUBLE_EQ(raw_temporal_score(100, 100, cfg), 1.0);
  EXPECT_DOUBLE_EQ(raw_temporal_score(100, 100, TemporalConfig{2.0, 4}), 0.5);
  EXPECT_DOUBLE_EQ(raw_temporal_score(110, 100, TemporalConfig{3.0, 1}), 0.3);
}

TEST(RawTemporalScore, FutureDocumentRejected) {
  try {
    raw_temporal_score(100, 101, TemporalConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFutureDocument);
  }
}

TEST(RawTemporalScore, StrictlyDecreasingInGap) {
  const TemporalConfig cfg{2.5, 3};
  for (EpochDay gap = cfg.min_delta_days; gap < 5000; ++gap) {
    ASSERT_GT(raw_temporal_score(gap, 0, cfg), raw_temporal_score(gap + 1, 0, cfg));
  }
}

TEST(TemporalConfig, Validation) {
  EXPECT_NO_THROW(validate(TemporalConfig{}));
  EXPECT_THROW(validate(TemporalConfig{0.0, 1}), Error);
  EXPECT_THROW(validate(TemporalConfig{-1.0, 1}), Error);
  EXPECT_THROW(validate(TemporalConfig{std::numeric_limits<double>::infinity(), 1}), Error);
  EXPECT_THROW(validate(TemporalConfig{1.0, 0}), Error);
}

TEST(ComputeStats, Examples) {
  const ScoreStats a = compute_stats(std::vector<double>{1.0, 3.0});
  EXPECT_DOUBLE_EQ(a.mean, 2.0);
  EXPECT_DOUBLE_EQ(a.std, 1.0);
  const ScoreStats b = compute_stats(std::vector<double>{5.0});
  EXPECT_EQ(b.mean, 5.0);
  EXPECT_EQ(b.std, 0.0);
  const ScoreStats c = compute_stats(std::vector<double>{2.0, 2.0, 2.0});
  EXPECT_EQ(c.mean, 2.0);
  EXPECT_EQ(c.std, 0.0);
  // A constant that does not survive sum / n exactly still has std == 0.
  const ScoreStats d = compute_stats(std::vector<double>(7, 0.1));
  EXPECT_EQ(d.mean, 0.1);
  EXPECT_EQ(d.std, 0.0);
}

TEST(ComputeStats, Errors) {
  try {
    compute_stats(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPopulation);
  }
  EXPECT_THROW(compute_stats(std::vector<double>{1.0, std::nan("")}), Error);
}

TEST(NormalizeTemporal, Examples) {
  EXPECT_EQ(normalize_temporal(std::vector<double>{1.0, 3.0}, {2.0, 1.0}, {10.0, 2.0}),
            (std::vector<double>{8.0, 12.0}));
  // Scaling every raw score by 2 and recomputing the stats changes nothing.
  EXPECT_EQ(normalize_temporal(std::vector<double>{2.0, 6.0}, {4.0, 2.0}, {10.0, 2.0}),
            (std::vector<double>{8.0, 12.0}));
  EXPECT_EQ(normalize_temporal(std::vector<double>{0.3, 0.3, 0.3}, {0.3, 0.0}, {0.7, 0.2}),
            (std::vector<double>{0.7, 0.7, 0.7}));
  EXPECT_EQ(normalize_temporal(std::vector<double>{1.0, 3.0}, {2.0, 1.0}, {0.7, 0.0}),
            (std::vector<double>{0.7, 0.7}));
}

class NormalizationProperty : public ::testing::Test {
 protected:
  std::vector<double> random_population(std::size_t n) {
    std::vector<double> v(n);
    std::uniform_int_distribution<EpochDay> gap(1, 20000);
    for (auto& x : v) x = raw_temporal_score(gap(rng_), 0, TemporalConfig{});
    return v;
  }
  std::mt19937_64 rng_{2024};
};

TEST_F(NormalizationProperty, OutputTakesSemanticMeanAndStd) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto tau = random_population(2 + rng_() % 200);
    const ScoreStats ts = compute_stats(tau);
    if (ts.std == 0.0) continue;
    const ScoreStats ss{unit(rng_), std::abs(unit(rng_))};
    const ScoreStats out = compute_stats(normalize_temporal(tau, ts, ss));
    EXPECT_NEAR(out.mean, ss.mean, 1e-9);
    EXPECT_NEAR(out.std, ss.std, 1e-9);
  }
}

TEST_F(NormalizationProperty, InvariantToAlpha) {
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<EpochDay> gaps(2 + rng_() % 100);
    for (auto& g : gaps) g = 1 + static_cast<EpochDay>(rng_() % 15000);
    const ScoreStats sem{0.3, 0.05};
    std::vector<std::vector<double>> outs;
    for (double alpha : {0.5, 1.0, 10.0, 1234.5}) {
      std::vector<double> tau;
      for (EpochDay g : gaps) tau.push_back(raw_temporal_score(g, 0, TemporalConfig{alpha, 1}));
      outs.push_back(normalize_temporal(tau, compute_stats(tau), sem));
    }
    for (std::size_t k = 1; k < outs.size(); ++k) {
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        ASSERT_NEAR(outs[k][i], outs[0][i], 1e-9);
      }
    }
  }
}

TEST_F(NormalizationProperty, CloserDocumentsScoreHigher) {
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<EpochDay> gaps(2 + rng_() % 50);
    for (auto& g : gaps) g = 1 + static_cast<EpochDay>(rng_() % 3000);
    std::vector<double> tau;
    for (EpochDay g : gaps) tau.push_back(raw_temporal_score(g, 0, TemporalConfig{}));
    const ScoreStats ts = compute_stats(tau);
    if (ts.std == 0.0) continue;
    const auto norm = normalize_temporal(tau, ts, {0.5, 0.1});
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      for (std::size_t j = 0; j < gaps.size(); ++j) {
        if (gaps[i] < gaps[j]) ASSERT_GT(norm[i], norm[j]);
      }
    }
  }
}

}  // namespace
}  // namespace tempret
