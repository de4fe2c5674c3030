// Copyright 2026 The NCG Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ncg/rational.h"

#include <charconv>
#include <string>

#include "ncg/error.h"

namespace ncg {

namespace {

std::int64_t ParseInteger(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(ParseInteger(text, whole));
  }
  std::int64_t num = ParseInteger(text.substr(0, slash), whole);
  std::int64_t den = ParseInteger(text.substr(slash + 1), whole);
  if (den == 0) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "zero denominator in '" + std::string(whole) + "'");
  }
  return Rational(num, den);
}

std::string FormatRational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

std::string Cost::ToString() const {
  return is_finite() ? FormatRational(value()) : "inf";
}

CostChange CostChange::Between(const Cost& before, const Cost& after) {
  if (before.is_finite() && after.is_finite()) {
    return {Kind::kFinite, after.value() - before.value()};
  }
  if (before.is_finite()) return {Kind::kPlusInfinity, 0};
  if (after.is_finite()) return {Kind::kMinusInfinity, 0};
  return {Kind::kUndefined, 0};
}

bool operator<(const CostChange& a, const CostChange& b) {
  auto rank = [](const CostChange& c) {
    switch (c.kind) {
      case CostChange::Kind::kMinusInfinity: return 0;
      case CostChange::Kind::kFinite: return 1;
      case CostChange::Kind::kPlusInfinity: return 2;
      case CostChange::Kind::kUndefined: return 3;
    }
    return 3;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  return a.kind == CostChange::Kind::kFinite && a.value < b.value;
}

std::string CostChange::ToString() const {
  switch (kind) {
    case Kind::kFinite: return FormatRational(value);
    case Kind::kPlusInfinity: return "+inf";
    case Kind::kMinusInfinity: return "-inf";
    case Kind::kUndefined: return "undefined";
  }
  return "undefined";
}

}  // namespace ncg
