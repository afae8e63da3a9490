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

#include "tempret/embedding.hpp"

#include <cmath>
#include <cstdio>

#include "tempret/error.hpp"

namespace tempret {

double l2_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double semantic_score(std::span<const double> query, std::span<const double> doc) {
  if (query.size() != doc.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(query.size()) + " vs " + std::to_string(doc.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < query.size(); ++i) sum += query[i] * doc[i];
  return sum;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    const bool word = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                      (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (word) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                             : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

HashingEncoder::HashingEncoder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
}

std::uint64_t HashingEncoder::feature_hash(std::string_view feature) const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed_;
  for (unsigned char c : feature) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

void HashingEncoder::add_feature(std::string_view feature,
                                 std::vector<double>& acc) const {
  const std::uint64_t h = feature_hash(feature);
  const std::size_t bucket = static_cast<std::size_t>(h % dimension_);
  acc[bucket] += (h >> 63) != 0 ? -1.0 : 1.0;
}

EmbeddingVector HashingEncoder::encode(std::string_view text) const {
  std::vector<double> acc(dimension_, 0.0);
  const auto tokens = tokenize(text);
  std::string feature;
  for (const std::string& tok : tokens) {
    // Unigram and trigram namespaces are kept apart by prefix.
    feature = "w:";
    feature += tok;
    add_feature(feature, acc);

    const std::string padded = "#" + tok + "#";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      feature = "c:";
      feature.append(padded, i, 3);
      add_feature(feature, acc);
    }
  }
  const double norm = l2_norm(acc);
  if (norm > 0.0) {
    for (double& x : acc) x /= norm;
  }
  return EmbeddingVector{std::move(acc)};
}

std::string HashingEncoder::fingerprint() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "signed-hash-ngram/v1 dim=%zu seed=0x%016llx",
                dimension_, static_cast<unsigned long long>(seed_));
  return buf;
}

}  // namespace tempret
