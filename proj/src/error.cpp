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

#include "tempret/error.hpp"

namespace tempret {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDate: return "MalformedDate";
    case ErrorCode::kInvalidDate: return "InvalidDate";
    case ErrorCode::kUnknownTemplate: return "UnknownTemplate";
    case ErrorCode::kInvalidEventRow: return "InvalidEventRow";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFutureDocument: return "FutureDocument";
    case ErrorCode::kEmptyPopulation: return "EmptyPopulation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownGoldPassage: return "UnknownGoldPassage";
    case ErrorCode::kEmptyQuerySet: return "EmptyQuerySet";
    case ErrorCode::kMixedYears: return "MixedYears";
    case ErrorCode::kInsufficientRows: return "InsufficientRows";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kCorpusMismatch: return "CorpusMismatch";
  }
  return "Unknown";
}

}  // namespace tempret
