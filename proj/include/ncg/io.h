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


#ifndef NCG_IO_H_
#define NCG_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"

#include "ncg/equilibrium.h"
#include "ncg/game.h"

namespace ncg {

inline constexpr int kSchemaVersion = 1;

// {"n": 3, "alpha": "5", "edges": [{"buyer": 0, "other": 1}, ...]}.
// "alpha" may also be a JSON integer. Errors map to distinct ErrorCodes:
// kMalformedDocument, kVertexOutOfRange, kSelfLoop, kDuplicateEdge.
StrategyProfile ProfileFromJson(const nlohmann::json& document);
StrategyProfile ParseProfile(const std::string& text);
// Canonical form: alpha as a string, edges sorted by (buyer, other).
nlohmann::json ProfileToJson(const StrategyProfile& profile);
std::string SerializeProfile(const StrategyProfile& profile);

StrategyProfile LoadProfile(const std::filesystem::path& path);
void SaveProfile(const StrategyProfile& profile,
                 const std::filesystem::path& path);

// Graphviz digraph, one arc buyer -> other per bought edge.
std::string ProfileToDot(const StrategyProfile& profile);
void ExportDot(const StrategyProfile& profile,
               const std::filesystem::path& path);

nlohmann::json ToJson(const CostChange& change);
nlohmann::json ToJson(const VerificationReport& report);
nlohmann::json ToJson(const DynamicsTrace& trace);

}  // namespace ncg

#endif  // NCG_IO_H_
