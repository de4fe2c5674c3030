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


#include "ncg/experiment.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "ncg/audit.h"
#include "ncg/error.h"
#include "ncg/io.h"
#include "ncg/structure.h"

namespace ncg {

using nlohmann::json;

namespace {

Rational ParseCoefficient(const std::string& text) {
  if (text.empty()) return 1;
  if (text == "-") return -1;
  if (text == "+") return 1;
  return ParseRational(text.front() == '+' ? text.substr(1) : text);
}

}  // namespace

AlphaExpression AlphaExpression::Parse(const std::string& text) {
  AlphaExpression out;
  out.text_ = text;
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) {
    throw NcgError(ErrorCode::kInvalidArgument, "empty alpha expression");
  }
  try {
    const auto pos = s.find('n');
    if (pos == std::string::npos) {
      out.offset_ = ParseCoefficient(s);
      return out;
    }
    out.slope_ = ParseCoefficient(s.substr(0, pos));
    const std::string rest = s.substr(pos + 1);
    if (rest.empty()) return out;
    if (rest.front() == '/') {
      const Rational divisor = ParseRational(rest.substr(1));
      if (divisor <= 0) {
        throw NcgError(ErrorCode::kInvalidArgument, "bad divisor");
      }
      out.slope_ /= divisor;
    } else if (rest.front() == '+' || rest.front() == '-') {
      out.offset_ = ParseCoefficient(rest);
    } else {
      throw NcgError(ErrorCode::kInvalidArgument, "unexpected text after n");
    }
  } catch (const NcgError&) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "alpha expression must look like a*n+b or a*n/b: '" +
                       text + "'");
  }
  return out;
}

Rational AlphaExpression::Evaluate(int n) const {
  const Rational value = slope_ * n + offset_;
  if (value <= 0) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "alpha '" + text_ + "' is not positive at n = " +
                       std::to_string(n));
  }
  return value;
}

AlphaRegime ClassifyAlpha(int n, const Rational& alpha) {
  if (alpha <= Rational(n)) return AlphaRegime::kBelowN;
  if (alpha <= Rational(2 * n)) return AlphaRegime::kOpen;
  return AlphaRegime::kProved;
}

std::string AlphaRegimeName(AlphaRegime regime) {
  switch (regime) {
    case AlphaRegime::kBelowN: return "below-n";
    case AlphaRegime::kOpen: return "open";
    case AlphaRegime::kProved: return "proved";
  }
  return "unknown";
}

ReportRow RunCell(int n, const Rational& alpha, const DeviationClass& cls,
                  const EngineLimits& limits, int jobs,
                  EnumerationResult* result) {
  EnumerationResult found = EnumerateEquilibria(n, alpha, cls, limits, jobs);
  ReportRow row;
  row.n = n;
  row.alpha = alpha;
  row.regime = ClassifyAlpha(n, alpha);
  row.profiles_scanned = found.profiles_scanned;
  row.ne_count = static_cast<std::int64_t>(found.equilibria.size());
  const NeCertificate certificate{cls, true};
  for (const EnumeratedEquilibrium& eq : found.equilibria) {
    if (eq.profile.num_undirected_edges() == n - 1) {
      ++row.tree_ne_count;
    } else {
      ++row.non_tree_ne_count;
    }
    const std::optional<int> girth = Girth(eq.profile);
    if (girth && (!row.min_girth_among_ne || *girth < *row.min_girth_among_ne)) {
      row.min_girth_among_ne = girth;
    }
    if (!girth) continue;
    const StrategyContext ctx(eq.profile);
    for (LemmaId id : {LemmaId::kMinCycleSize, LemmaId::kDirectedMinCycles}) {
      if (AuditStructural(ctx, id, certificate).IsFailure()) {
        ++row.audit_failures;
      }
    }
  }
  if (result != nullptr) *result = std::move(found);
  return row;
}

std::string CsvHeader() {
  return "# ncg-report v1\n"
         "n,alpha,regime,profiles_scanned,ne_count,tree_ne_count,"
         "non_tree_ne_count,min_girth_among_ne,audit_failures\n";
}

std::string CsvRow(const ReportRow& row) {
  std::string girth = row.min_girth_among_ne
                          ? std::to_string(*row.min_girth_among_ne)
                          : std::string();
  return std::to_string(row.n) + "," + FormatRational(row.alpha) + "," +
         AlphaRegimeName(row.regime) + "," +
         std::to_string(row.profiles_scanned) + "," +
         std::to_string(row.ne_count) + "," +
         std::to_string(row.tree_ne_count) + "," +
         std::to_string(row.non_tree_ne_count) + "," + girth + "," +
         std::to_string(row.audit_failures) + "\n";
}

std::vector<ReportRow> RunSweep(const SweepSpec& spec) {
  std::vector<ReportRow> rows;
  for (int n : spec.n_values) {
    for (const AlphaExpression& expr : spec.alpha_expressions) {
      rows.push_back(RunCell(n, expr.Evaluate(n), spec.deviation_class,
                             spec.limits, spec.jobs));
    }
  }
  return rows;
}

namespace {

struct CommonOptions {
  std::string input;
  std::string class_name = "exact";
  std::int64_t budget = EngineLimits{}.max_deviations_per_vertex;
  std::string out;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  int max_iters = 1000;
  std::string order = "round-robin";
  std::vector<int> n_values;
  std::vector<std::string> alpha_texts;
};

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NcgError(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw NcgError(ErrorCode::kIo, "write failed: " + path);
}

// Row assertions: outside the open range, any non-tree equilibrium above 2n
// or a lemma failure is a regression.
bool RowFails(const ReportRow& row) {
  return row.ViolatesTreeProperty() || row.audit_failures > 0;
}

int Verify(const CommonOptions& o, std::ostream& out) {
  const StrategyProfile profile = LoadProfile(o.input);
  EngineLimits limits;
  limits.max_deviations_per_vertex = o.budget;
  const VerificationReport report =
      VerifyEquilibrium(profile, DeviationClass::Parse(o.class_name), limits);
  out << ToJson(report).dump(2) << "\n";
  return 0;
}

int Enumerate(const CommonOptions& o, std::ostream& out) {
  if (o.n_values.size() != 1 || o.alpha_texts.size() != 1) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "enumerate takes exactly one --n and one --alpha");
  }
  const int n = o.n_values.front();
  const Rational alpha = AlphaExpression::Parse(o.alpha_texts.front()).Evaluate(n);
  EngineLimits limits;
  limits.max_deviations_per_vertex = o.budget;
  EnumerationResult result;
  const ReportRow row = RunCell(n, alpha, DeviationClass::Parse(o.class_name),
                                limits, o.jobs, &result);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    for (const EnumeratedEquilibrium& eq : result.equilibria) {
      const std::string stem =
          (std::filesystem::path(o.out) / ("ne_" + std::to_string(eq.index)))
              .string();
      SaveProfile(eq.profile, stem + ".json");
      ExportDot(eq.profile, stem + ".dot");
    }
  }
  out << CsvHeader() << CsvRow(row);
  return RowFails(row) ? 1 : 0;
}

int Dynamics(const CommonOptions& o, std::ostream& out) {
  const StrategyProfile profile = LoadProfile(o.input);
  VertexOrder order;
  if (o.order == "round-robin") {
    order = VertexOrder::kRoundRobin;
  } else if (o.order == "random") {
    order = VertexOrder::kRandom;
  } else {
    throw NcgError(ErrorCode::kInvalidArgument, "unknown order " + o.order);
  }
  EngineLimits limits;
  limits.max_deviations_per_vertex = o.budget;
  const DynamicsTrace trace =
      BestResponseDynamics(profile, DeviationClass::Parse(o.class_name), order,
                           o.max_iters, o.seed, limits);
  json doc = ToJson(trace);
  doc["seed"] = o.seed;
  doc["order"] = o.order;
  out << doc.dump(2) << "\n";
  if (!o.out.empty()) SaveProfile(trace.final_profile, o.out);
  return 0;
}

int Audit(const CommonOptions& o, std::ostream& out) {
  const StrategyProfile profile = LoadProfile(o.input);
  const DeviationClass cls = DeviationClass::Parse(o.class_name);
  json certificate = nullptr;
  std::optional<NeCertificate> cert;
  try {
    EngineLimits limits;
    limits.max_deviations_per_vertex = o.budget;
    const VerificationReport report = VerifyEquilibrium(profile, cls, limits);
    cert = NeCertificate{cls, report.verifiable && report.is_equilibrium};
    certificate = {{"deviation_class", cls.Name()},
                   {"is_equilibrium", cert->is_equilibrium},
                   {"certifies", cert->Certifies()}};
  } catch (const NcgError& e) {
    if (e.code() != ErrorCode::kBudgetExceeded) throw;
    certificate = {{"deviation_class", cls.Name()},
                   {"skipped", std::string(e.what())}};
  }
  const StrategyContext ctx(profile);
  const AuditReport report = AuditFull(ctx, cert);
  json findings = json::array();
  for (const AuditFinding& f : report.findings) findings.push_back(ToJson(f));
  json bounds = json::array();
  for (const BoundComparison& b : report.bounds) bounds.push_back(ToJson(b));
  const json doc = {{"schema_version", kSchemaVersion},
                    {"profile_hash", profile.Digest()},
                    {"certificate", certificate},
                    {"findings", findings},
                    {"bounds", bounds},
                    {"truncated", report.truncated},
                    {"summary",
                     {{"applicable", report.ApplicableCount()},
                      {"holds", report.HoldsCount()},
                      {"failures", report.FailureCount()}}}};
  out << doc.dump(2) << "\n";
  return report.FailureCount() > 0 ? 1 : 0;
}

int Sweep(const CommonOptions& o, std::ostream& out) {
  if (o.n_values.empty() || o.alpha_texts.empty()) {
    throw NcgError(ErrorCode::kInvalidArgument, "sweep needs --n and --alpha");
  }
  SweepSpec spec;
  spec.n_values = o.n_values;
  for (const std::string& text : o.alpha_texts) {
    spec.alpha_expressions.push_back(AlphaExpression::Parse(text));
  }
  spec.deviation_class = DeviationClass::Parse(o.class_name);
  spec.seed = o.seed;
  spec.limits.max_deviations_per_vertex = o.budget;
  spec.jobs = o.jobs;
  const std::vector<ReportRow> rows = RunSweep(spec);
  std::string csv = CsvHeader();
  bool failed = false;
  for (const ReportRow& row : rows) {
    csv += CsvRow(row);
    failed = failed || RowFails(row);
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    WriteText(o.out, csv);
  }
  return failed ? 1 : 0;
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Network creation game equilibrium lab", "ncg"};
  app.require_subcommand(1);
  CommonOptions o;

  auto add_class = [&o](CLI::App* sub) {
    sub->add_option("--class", o.class_name, "deviation class")
        ->capture_default_str();
  };
  auto add_budget = [&o](CLI::App* sub) {
    sub->add_option("--budget", o.budget,
                    "max candidate strategies per agent")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand("verify", "check one profile");
  verify->add_option("--input", o.input, "profile JSON")->required();
  add_class(verify);
  add_budget(verify);

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "enumerate all equilibria for n, alpha");
  enumerate->add_option("--n", o.n_values, "vertex count")->required();
  enumerate->add_option("--alpha", o.alpha_texts, "edge price")->required();
  enumerate->add_option("--out", o.out, "directory for per-equilibrium dumps");
  enumerate->add_option("--jobs", o.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  add_class(enumerate);
  add_budget(enumerate);

  CLI::App* dynamics =
      app.add_subcommand("dynamics", "run best-response dynamics");
  dynamics->add_option("--input", o.input, "initial profile JSON")->required();
  dynamics->add_option("--seed", o.seed, "vertex order seed");
  dynamics->add_option("--max-iters", o.max_iters, "maximum applied moves")
      ->check(CLI::NonNegativeNumber);
  dynamics->add_option("--order", o.order, "round-robin or random")
      ->check(CLI::IsMember({"round-robin", "random"}));
  dynamics->add_option("--out", o.out, "write the final profile here");
  add_class(dynamics);
  add_budget(dynamics);

  CLI::App* audit = app.add_subcommand("audit", "run every lemma audit");
  audit->add_option("--input", o.input, "profile JSON")->required();
  add_class(audit);
  add_budget(audit);

  CLI::App* sweep = app.add_subcommand("sweep", "enumerate an (n, alpha) grid");
  sweep->add_option("--n", o.n_values, "vertex counts")
      ->required()
      ->delimiter(',');
  sweep->add_option("--alpha", o.alpha_texts, "alpha expressions over n")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seed", o.seed, "recorded seed");
  sweep->add_option("--jobs", o.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", o.out, "CSV path (default stdout)");
  add_class(sweep);
  add_budget(sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ncg: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return Verify(o, out);
    if (enumerate->parsed()) return Enumerate(o, out);
    if (dynamics->parsed()) return Dynamics(o, out);
    if (audit->parsed()) return Audit(o, out);
    return Sweep(o, out);
  } catch (const NcgError& e) {
    err << "ncg: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ncg: io: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ncg
