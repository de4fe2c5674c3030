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


#include "ncg/io.h"

#include <fstream>
#include <sstream>

#include "ncg/error.h"

namespace ncg {

using nlohmann::json;

namespace {

[[noreturn]] void Malformed(const std::string& why) {
  throw NcgError(ErrorCode::kMalformedDocument, why);
}

int IntegerField(const json& object, const char* key) {
  if (!object.contains(key)) Malformed(std::string("missing field '") + key + "'");
  const json& value = object.at(key);
  if (!value.is_number_integer()) {
    Malformed(std::string("field '") + key + "' must be an integer");
  }
  const std::int64_t v = value.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw NcgError(ErrorCode::kVertexOutOfRange,
                   std::string("field '") + key + "' out of range");
  }
  return static_cast<int>(v);
}

Rational AlphaField(const json& document) {
  if (!document.contains("alpha")) Malformed("missing field 'alpha'");
  const json& alpha = document.at("alpha");
  if (alpha.is_number_integer()) return Rational(alpha.get<std::int64_t>());
  if (!alpha.is_string()) Malformed("'alpha' must be a string or an integer");
  try {
    return ParseRational(alpha.get<std::string>());
  } catch (const NcgError& e) {
    Malformed(e.what());
  }
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NcgError(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

}  // namespace

StrategyProfile ProfileFromJson(const json& document) {
  if (!document.is_object()) Malformed("profile document must be an object");
  const int n = IntegerField(document, "n");
  const Rational alpha = AlphaField(document);
  if (!document.contains("edges") || !document.at("edges").is_array()) {
    Malformed("'edges' must be an array");
  }
  std::vector<BoughtEdge> edges;
  for (const json& e : document.at("edges")) {
    if (!e.is_object()) Malformed("each edge must be an object");
    edges.push_back({IntegerField(e, "buyer"), IntegerField(e, "other")});
  }
  if (n < 1) Malformed("'n' must be positive");
  return StrategyProfile(n, alpha, std::move(edges));
}

StrategyProfile ParseProfile(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    Malformed(std::string("invalid JSON: ") + e.what());
  }
  return ProfileFromJson(document);
}

json ProfileToJson(const StrategyProfile& profile) {
  json edges = json::array();
  for (const BoughtEdge& e : profile.bought_edges()) {
    edges.push_back({{"buyer", e.buyer}, {"other", e.other}});
  }
  return {{"n", profile.n()},
          {"alpha", FormatRational(profile.alpha())},
          {"edges", edges}};
}

std::string SerializeProfile(const StrategyProfile& profile) {
  return ProfileToJson(profile).dump(2) + "\n";
}

StrategyProfile LoadProfile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NcgError(ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseProfile(buffer.str());
}

void SaveProfile(const StrategyProfile& profile,
                 const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  out << SerializeProfile(profile);
  if (!out) throw NcgError(ErrorCode::kIo, "write failed: " + path.string());
}

std::string ProfileToDot(const StrategyProfile& profile) {
  std::string out = "digraph ncg {\n";
  for (VertexId v = 0; v < profile.n(); ++v) {
    out += "  " + std::to_string(v) + ";\n";
  }
  for (const BoughtEdge& e : profile.bought_edges()) {
    out += "  " + std::to_string(e.buyer) + " -> " + std::to_string(e.other) +
           ";\n";
  }
  out += "}\n";
  return out;
}

void ExportDot(const StrategyProfile& profile,
               const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  out << ProfileToDot(profile);
  if (!out) throw NcgError(ErrorCode::kIo, "write failed: " + path.string());
}

json ToJson(const CostChange& change) {
  return {{"kind", change.IsFinite() ? "finite" : change.ToString()},
          {"value", change.ToString()}};
}

json ToJson(const VerificationReport& report) {
  json out = {{"schema_version", kSchemaVersion},
              {"profile_hash", report.profile_hash},
              {"deviation_class", report.deviation_class.Name()},
              {"verifiable", report.verifiable},
              {"is_equilibrium", report.is_equilibrium},
              {"deviations_checked", report.deviations_checked},
              {"witness", nullptr}};
  if (report.witness) {
    out["witness"] = {{"vertex", report.witness->deviation.vertex},
                      {"new_edge_set", report.witness->deviation.new_edge_set},
                      {"delta", ToJson(report.witness->delta)}};
  }
  return out;
}

json ToJson(const DynamicsTrace& trace) {
  json steps = json::array();
  for (const DynamicsStep& s : trace.steps) {
    steps.push_back({{"vertex", s.vertex},
                     {"new_edge_set", s.deviation.new_edge_set},
                     {"delta", ToJson(s.delta)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"converged", trace.converged},
          {"steps", steps},
          {"final_profile", ProfileToJson(trace.final_profile)},
          {"final_profile_hash", trace.final_profile.Digest()}};
}

}  // namespace ncg
