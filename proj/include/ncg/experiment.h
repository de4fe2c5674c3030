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


#ifndef NCG_EXPERIMENT_H_
#define NCG_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ncg/equilibrium.h"
#include "ncg/rational.h"

namespace ncg {

// alpha as a function of n; only a*n + b and a*n/b (and constants).
class AlphaExpression {
 public:
  // e.g. "2n+1", "3n", "3n-3", "n/2", "3n/2", "21/2". Throws
  // kInvalidArgument.
  static AlphaExpression Parse(const std::string& text);

  // Throws kInvalidArgument when the value is not positive.
  Rational Evaluate(int n) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  Rational slope_ = 0;
  Rational offset_ = 0;
};

enum class AlphaRegime { kBelowN, kOpen, kProved };

// alpha <= n, n < alpha <= 2n, alpha > 2n.
AlphaRegime ClassifyAlpha(int n, const Rational& alpha);
std::string AlphaRegimeName(AlphaRegime regime);

struct ReportRow {
  int n = 0;
  Rational alpha = 0;
  std::int64_t profiles_scanned = 0;
  std::int64_t ne_count = 0;
  std::int64_t tree_ne_count = 0;
  std::int64_t non_tree_ne_count = 0;
  std::optional<int> min_girth_among_ne;
  std::int64_t audit_failures = 0;
  AlphaRegime regime = AlphaRegime::kBelowN;

  // The tree regression gate: no non-tree equilibrium above 2n.
  bool ViolatesTreeProperty() const {
    return regime == AlphaRegime::kProved && non_tree_ne_count > 0;
  }
};

// Enumerates one (n, alpha) cell and audits every equilibrium found
// (girth and directed min-cycle checks, certified by the class when exact).
ReportRow RunCell(int n, const Rational& alpha, const DeviationClass& cls,
                  const EngineLimits& limits, int jobs,
                  EnumerationResult* result = nullptr);

std::string CsvHeader();  // version comment line plus the column row
std::string CsvRow(const ReportRow& row);

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<AlphaExpression> alpha_expressions;
  DeviationClass deviation_class;
  std::uint64_t seed = 0;
  EngineLimits limits;
  int jobs = 1;
};

std::vector<ReportRow> RunSweep(const SweepSpec& spec);

// The CLI: verify | enumerate | dynamics | audit | sweep. Exit 0 on
// success, 1 on an assertion failure, 2 on usage or IO errors.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace ncg

#endif  // NCG_EXPERIMENT_H_
