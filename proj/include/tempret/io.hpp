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

#ifndef TEMPRET_IO_HPP_
#define TEMPRET_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tempret {

// Whole-file helpers; failures throw Error(kIo).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Splits on '\n', dropping a trailing '\r' per line. A final empty line
// (from a trailing newline) is not reported.
std::vector<std::string_view> split_lines(std::string_view text);

std::string sha256_hex(std::string_view data);

}  // namespace tempret

#endif  // TEMPRET_IO_HPP_
