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

// Command-line driver: gen, index, search, eval.
//
// Settings resolve in three layers: built-in defaults, then a JSON config
// file (--config), then explicit flags. TEMPRET_DATA_DIR supplies the
// default data directory. Exit codes: 0 success, 1 runtime or I/O failure,
// 2 usage error.

#ifndef TEMPRET_CLI_HPP_
#define TEMPRET_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tempret/datagen.hpp"
#include "tempret/embedding.hpp"
#include "tempret/retriever.hpp"

namespace tempret::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kDataDirEnv = "TEMPRET_DATA_DIR";

struct RunConfig {
  GenSpec gen;
  RetrievalConfig retrieval;
  std::size_t dimension = kDefaultDimension;
  std::uint64_t hash_seed = kDefaultHashSeed;
  unsigned threads = 1;

  std::filesystem::path data_dir = "data";
  std::filesystem::path out_dir;  // gen output; defaults to data_dir
  std::filesystem::path events;   // optional CSV replacing the synthetic table
  std::filesystem::path corpus;
  std::filesystem::path index;
  std::vector<std::filesystem::path> queries;
  std::filesystem::path predictions;
  std::filesystem::path report;

  bool compare = false;
  bool no_clock = false;
};

nlohmann::ordered_json retrieval_to_json(const RetrievalConfig& cfg);
// Applies a config document {"data_dir", "threads", "gen", "retrieval",
// "encoder", "paths"} on top of `cfg`. Unknown keys are rejected.
void apply_config_json(const nlohmann::json& j, RunConfig& cfg);

// args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tempret::cli

#endif  // TEMPRET_CLI_HPP_
