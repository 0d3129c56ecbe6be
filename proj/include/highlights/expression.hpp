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

// Arithmetic over measure names: + - * / with parentheses and numeric
// literals. Division by zero and null operands evaluate to nullopt.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hl {

class Expression {
 public:
  // Throws Error(BadDerivation) on a syntax error.
  static Expression parse(std::string_view text);

  using Lookup = std::function<std::optional<double>(std::string_view)>;

  std::optional<double> evaluate(const Lookup& lookup) const;
  // Distinct measure names in first-appearance order.
  std::vector<std::string> references() const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace hl
