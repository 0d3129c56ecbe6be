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

#include "highlights/json_number.hpp"

#include <charconv>
#include <cmath>

namespace hl {

namespace {

std::string to_text(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

double from_text(const std::string& s) {
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

double round12(double v) { return from_text(to_text(v, 12)); }

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  const double target = round12(v);
  const double magnitude = std::fabs(target);
  int start = 1;
  if (magnitude >= 1.0 && magnitude < 1e12) start = static_cast<int>(std::floor(std::log10(magnitude))) + 1;
  for (int precision = start; precision < 12; ++precision) {
    auto text = to_text(v, precision);
    if (from_text(text) == target) return text;
  }
  return to_text(v, 12);
}

nlohmann::ordered_json json_number(double v) {
  const double r = v == 0.0 ? 0.0 : round12(v);
  if (std::isfinite(r) && r == std::trunc(r) && std::fabs(r) < 9007199254740992.0) {
    return static_cast<std::int64_t>(r);
  }
  return r;
}

bool same_number(double a, double b) { return a == b || round12(a) == round12(b); }

}  // namespace hl
