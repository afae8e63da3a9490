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

// Test-only reference implementations. Nothing here calls into the code
// paths it is used to check.

#ifndef TEMPRET_TESTS_ORACLES_HPP_
#define TEMPRET_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tempret/corpus.hpp"

namespace tempret::oracle {

inline bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int month_length(int y, int m) {
  static const int kLen[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kLen[m - 1];
}

// Counts days one year, then one month, then one day at a time.
inline std::int64_t count_days_from_1970(int year, int month, int day) {
  std::int64_t n = 0;
  if (year >= 1970) {
    for (int y = 1970; y < year; ++y) n += leap(y) ? 366 : 365;
  } else {
    for (int y = year; y < 1970; ++y) n -= leap(y) ? 366 : 365;
  }
  for (int m = 1; m < month; ++m) n += month_length(year, m);
  return n + day - 1;
}

struct Doc {
  std::string id;
  std::int64_t day;
  std::vector<double> vec;
};

struct Ranked {
  std::string id;
  double score;
};

// Exhaustive scoring of every document: dot product, future mask,
// alpha / max(gap, min_gap), z-normalization onto the semantic distribution
// of the surviving documents, sum, and sort (score desc, day desc, id asc).
inline std::vector<std::string> brute_force_rank(const std::vector<Doc>& docs,
                                                 const std::vector<double>& query,
                                                 std::int64_t query_day, double alpha,
                                                 std::int64_t min_gap, std::size_t top_k) {
  struct Row {
    const Doc* doc;
    double sem;
    double tau;
  };
  std::vector<Row> rows;
  for (const Doc& d : docs) {
    if (d.day > query_day) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i) dot += query[i] * d.vec[i];
    const std::int64_t gap = std::max<std::int64_t>(query_day - d.day, min_gap);
    rows.push_back({&d, dot, alpha / static_cast<double>(gap)});
  }
  if (rows.empty()) return {};
  auto mean_std = [&](auto get) {
    double lo = get(rows[0]), hi = lo, s = 0.0;
    for (const Row& r : rows) {
      lo = std::min(lo, get(r));
      hi = std::max(hi, get(r));
      s += get(r);
    }
    const double m = s / static_cast<double>(rows.size());
    if (lo == hi) return std::pair{lo, 0.0};
    double v = 0.0;
    for (const Row& r : rows) v += (get(r) - m) * (get(r) - m);
    return std::pair{m, std::sqrt(v / static_cast<double>(rows.size()))};
  };
  const auto [mt, st] = mean_std([](const Row& r) { return r.tau; });
  const auto [ms, ss] = mean_std([](const Row& r) { return r.sem; });

  std::vector<std::pair<const Row*, double>> scored;
  for (const Row& r : rows) {
    const double tn = (st == 0.0 || ss == 0.0) ? ms : (r.tau - mt) / st * ss + ms;
    scored.emplace_back(&r, r.sem + tn);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (a.first->doc->day != b.first->doc->day) return a.first->doc->day > b.first->doc->day;
    return a.first->doc->id < b.first->doc->id;
  });
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < scored.size() && i < top_k; ++i) ids.push_back(scored[i].first->doc->id);
  return ids;
}

}  // namespace tempret::oracle

#endif  // TEMPRET_TESTS_ORACLES_HPP_
