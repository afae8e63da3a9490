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

// Temporal proximity scoring.
//
// A document's raw temporal score is alpha / (query_day - doc_day), with the
// day difference clamped below at min_delta_days so same-day documents are
// finite and maximally proximate. Raw scores are then z-normalized over a
// population and rescaled onto the semantic scores' mean and spread, which
// puts both terms of the combined ranking score on the same scale.

#ifndef TEMPRET_TEMPORAL_HPP_
#define TEMPRET_TEMPORAL_HPP_

#include <span>
#include <vector>

#include "tempret/corpus.hpp"

namespace tempret {

struct TemporalConfig {
  double alpha_scale = 1.0;
  EpochDay min_delta_days = 1;
};

// Throws kInvalidArgument unless alpha_scale > 0 and min_delta_days >= 1.
void validate(const TemporalConfig& cfg);

struct ScoreStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

// alpha / max(query_day - doc_day, min_delta_days). Throws kFutureDocument
// when doc_day > query_day.
double raw_temporal_score(EpochDay query_day, EpochDay doc_day,
                          const TemporalConfig& cfg);

// Mean and population (divide-by-N) standard deviation. A constant
// population reports std == 0 exactly. Throws kEmptyPopulation, or
// kInvalidArgument on non-finite input.
ScoreStats compute_stats(std::span<const double> values);

// ((tau - tau_mean) / tau_std) * sem_std + sem_mean elementwise. If either
// std is zero every output is sem_mean.
std::vector<double> normalize_temporal(std::span<const double> tau_raw,
                                       const ScoreStats& tau_stats,
                                       const ScoreStats& sem_stats);

}  // namespace tempret

#endif  // TEMPRET_TEMPORAL_HPP_
