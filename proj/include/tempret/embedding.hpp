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

#ifndef TEMPRET_EMBEDDING_HPP_
#define TEMPRET_EMBEDDING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tempret {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

double l2_norm(std::span<const double> v);

// Dot product of two encoder representations. Throws kDimensionMismatch.
double semantic_score(std::span<const double> query, std::span<const double> doc);
inline double semantic_score(const EmbeddingVector& query, const EmbeddingVector& doc) {
  return semantic_score(query.values, doc.values);
}

// Text -> fixed-dimension vector. Implementations must be deterministic and
// safe to call concurrently.
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual EmbeddingVector encode(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
  // Identifies the encoder and its parameters; an index built with one
  // fingerprint cannot be queried with another.
  virtual std::string fingerprint() const = 0;
};

// ASCII-lowercased maximal alphanumeric runs. Bytes >= 0x80 count as
// alphanumeric so UTF-8 names stay in one token.
std::vector<std::string> tokenize(std::string_view text);

inline constexpr std::uint64_t kDefaultHashSeed = 0x54454d5052455431ULL;
inline constexpr std::size_t kDefaultDimension = 1024;

// Bag of word unigrams and boundary-padded character trigrams ("#ab", "abc",
// "bc#"), each hashed into one of `dimension` buckets with a +1/-1 sign and
// summed. The result is L2-normalized; text without tokens maps to zero.
class HashingEncoder final : public Encoder {
 public:
  explicit HashingEncoder(std::size_t dimension = kDefaultDimension,
                          std::uint64_t seed = kDefaultHashSeed);

  EmbeddingVector encode(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string fingerprint() const override;

  // Stable 64-bit feature hash (FNV-1a, seeded, with a splitmix64 finish).
  std::uint64_t feature_hash(std::string_view feature) const;

 private:
  void add_feature(std::string_view feature, std::vector<double>& acc) const;

  std::size_t dimension_;
  std::uint64_t seed_;
};

}  // namespace tempret

#endif  // TEMPRET_EMBEDDING_HPP_
