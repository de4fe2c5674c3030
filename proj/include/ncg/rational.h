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


#ifndef NCG_RATIONAL_H_
#define NCG_RATIONAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ncg {

// Exact rational in lowest terms with a positive denominator. All edge
// prices, bounds and cost values go through this type; nothing compares
// costs in floating point.
using Rational = boost::rational<std::int64_t>;

// Accepts "p", "p/q", with an optional leading '-'. Throws NcgError
// (kInvalidArgument) on anything else or a zero denominator.
Rational ParseRational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string FormatRational(const Rational& value);

// A cost that may be infinite (disconnected agent). Only +inf is
// representable: costs are never -inf.
class Cost {
 public:
  static Cost Infinite() { return Cost(); }
  static Cost Finite(Rational value) { return Cost(value); }

  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const { return *value_; }

  friend bool operator==(const Cost&, const Cost&) = default;
  friend bool operator<(const Cost& a, const Cost& b) {
    if (!a.is_finite()) return false;
    if (!b.is_finite()) return true;
    return a.value() < b.value();
  }

  std::string ToString() const;

 private:
  Cost() = default;
  explicit Cost(Rational value) : value_(value) {}

  std::optional<Rational> value_;
};

// The difference new - old of two Costs.
struct CostChange {
  enum class Kind { kFinite, kPlusInfinity, kMinusInfinity, kUndefined };

  Kind kind = Kind::kFinite;
  Rational value = 0;  // meaningful only when kind == kFinite

  static CostChange Between(const Cost& before, const Cost& after);

  bool IsFinite() const { return kind == Kind::kFinite; }
  // Strict improvement for the deviating agent.
  bool IsImprovement() const {
    return kind == Kind::kMinusInfinity ||
           (kind == Kind::kFinite && value < 0);
  }

  friend bool operator==(const CostChange&, const CostChange&) = default;
  // Orders improvements first; kUndefined sorts last.
  friend bool operator<(const CostChange& a, const CostChange& b);

  std::string ToString() const;
};

}  // namespace ncg

#endif  // NCG_RATIONAL_H_
