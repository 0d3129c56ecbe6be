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

#include <string>

#include "json.hpp"

namespace hl {

// Shortest decimal form that reads back to the same double, capped at 12
// significant digits. Whole parts below 1e12 are never written in
// exponent form.
std::string format_number(double v);

// Rounds to 12 significant digits; integral results become JSON integers so
// they print without a trailing ".0".
nlohmann::ordered_json json_number(double v);

// True when both values agree to 12 significant digits.
bool same_number(double a, double b);

}  // namespace hl
