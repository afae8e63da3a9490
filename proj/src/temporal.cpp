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

#include <algorithm>
#include <cmath>
#include <string>

#include "tempret/error.hpp"

namespace tempret {

void validate(const TemporalConfig& cfg) {
  if (!(cfg.alpha_scale > 0.0) || !std::isfinite(cfg.alpha_scale)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha_scale must be a positive finite number");
  }
  if (cfg.min_delta_days < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_delta_days must be >= 1");
  }
}

double raw_temporal_score(EpochDay query_day, EpochDay doc_day,
                          const TemporalConfig& cfg) {
  if (doc_day > query_day) {
    throw Error(ErrorCode::kFutureDocument,
                "document day " + std::to_string(doc_day) + " is after query day " +
                    std::to_string(query_day));
  }
  const EpochDay delta = std::max(query_day - doc_day, cfg.min_delta_days);
  return cfg.alpha_scale / static_cast<double>(delta);
}

ScoreStats compute_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyPopulation, "no scores");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite score");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return ScoreStats{*lo, 0.0};

  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return ScoreStats{mean, std::sqrt(sq / n)};
}

std::vector<double> normalize_temporal(std::span<const double> tau_raw,
                                       const ScoreStats& tau_stats,
                                       const ScoreStats& sem_stats) {
  std::vector<double> out(tau_raw.size(), sem_stats.mean);
  if (tau_stats.std == 0.0 || sem_stats.std == 0.0) return out;
  for (std::size_t i = 0; i < tau_raw.size(); ++i) {
    out[i] = (tau_raw[i] - tau_stats.mean) / tau_stats.std * sem_stats.std + sem_stats.mean;
  }
  return out;
}

}  // namespace tempret
