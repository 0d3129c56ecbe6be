// Copyright 2026 The Highlights Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hl {

// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorCategory { Config, Data, Query, Kernel, Validation, Internal };

enum class Errc {
  // core_model
  UnknownCharacter,
  UnknownCharacterType,
  InvalidSchema,
  // ingest / config
  FileNotFound,
  MalformedCsv,
  JoinMiss,
  BadDerivation,
  BadConfig,
  // query
  UnknownFeature,
  NonNumericMeasure,
  UnsupportedGrouperArity,
  NotADimension,
  InvalidQuery,
  MarginalsUndefined,
  CharacterNotOnAxis,
  // stats kernels
  LengthMismatch,
  InsufficientN,
  ConstantInput,
  AllTiedInput,
  NOutOfRange,
  ZeroRange,
  SparseSeries,
  // highlights / narration
  InvalidHighlight,
  UnbindablePlaceholder,
  Internal,
};

ErrorCategory category_of(Errc code) noexcept;
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  Errc code_;
};

}  // namespace hl
