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


#ifndef NCG_AUDIT_H_
#define NCG_AUDIT_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncg/equilibrium.h"
#include "ncg/game.h"
#include "ncg/structure.h"

namespace ncg {

// Everything the deviation bounds and structural checks read: H, r, T,
// X-levels and C(v).
class StrategyContext {
 public:
  // Throws kDisconnected.
  explicit StrategyContext(StrategyProfile profile);

  const StrategyProfile& profile() const { return profile_; }
  const StructuralView& view() const { return view_; }
  const DistanceMatrix& dist() const { return view_.dist; }
  const SptAnalysis& spt() const { return view_.spt; }
  const CycleReport& cycles() const { return cycles_; }
  VertexId root() const { return view_.root(); }
  bool HasCore() const { return view_.HasCore(); }
  bool InCore(VertexId v) const { return view_.in_core[v]; }
  int n() const { return profile_.n(); }
  const Rational& alpha() const { return profile_.alpha(); }

  int Depth(VertexId v) const { return view_.spt.depth[v]; }
  int SubtreeSize(VertexId v) const { return view_.spt.subtree_size[v]; }
  int EdgeSubtree(VertexId u, VertexId v) const;
  int CoreDegree(VertexId v) const { return view_.core_degree[v]; }
  std::optional<int> Level(VertexId u, VertexId v) const;
  bool InPlus(VertexId u, VertexId v) const;
  // |C(v)|; nullopt outside H.
  std::optional<int> SmallestCycleLength(VertexId v) const;
  // alpha > 2n.
  bool AlphaAboveTwoN() const;

 private:
  StrategyProfile profile_;
  StructuralView view_;
  CycleReport cycles_;
};

enum class BoundStrategy { kSell = 1, kSellBuyRoot = 2, kSellPlusBuyRoot = 3 };

std::string BoundStrategyName(BoundStrategy strategy);

struct SoldEdge {
  VertexId target;  // u sells uv_k with v_k = target
  int level = 0;    // i_k
  int subtree = 0;  // |T(uv_k)|
};

// The quantities the bounds read for one vertex u.
struct BoundInputs {
  int n = 0;
  Rational alpha = 0;
  // |T(u_0)|, ..., |T(u_d)| along the tree path u = u_0, ..., u_d = r.
  std::vector<int> path_subtrees;

  int depth() const { return static_cast<int>(path_subtrees.size()) - 1; }
};

BoundInputs GatherBoundInputs(const StrategyContext& ctx, VertexId u);

// Exact bound values. Preconditions are not checked here;
// AuditDeviationBound does that.
Rational Strategy1Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold);
Rational Strategy2Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold);
Rational Strategy3Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold);
Rational Strategy1Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold);
Rational Strategy2Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold);
Rational Strategy3Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold);

// Looks up i_k and |T(uv_k)| for each target; an up-edge without a level
// contributes i_k = 0 (its subtree term is 0 anyway).
std::vector<SoldEdge> DescribeSale(const StrategyContext& ctx, VertexId u,
                                   const std::vector<VertexId>& targets);

// The literal deviation the bound describes.
Deviation BoundDeviation(const StrategyContext& ctx, VertexId u,
                         BoundStrategy strategy,
                         const std::vector<VertexId>& targets);

// Proof of equilibrium under the exact class, usable to un-gate lemmas.
struct NeCertificate {
  DeviationClass deviation_class;
  bool is_equilibrium = false;

  bool Certifies() const {
    return is_equilibrium && deviation_class.IsExact();
  }
};

struct BoundComparison {
  BoundStrategy strategy;
  VertexId vertex;
  std::vector<SoldEdge> sold;
  bool bought_root = false;
  Rational bound = 0;
  CostChange exact_delta;
  bool preconditions_met = false;
  std::string precondition_notes;
  bool dominates = false;  // exact_delta <= bound
  // Certified NE only: exact_delta >= 0.
  std::optional<bool> ne_consistent;

  bool IsViolation() const { return preconditions_met && !dominates; }
};

BoundComparison AuditDeviationBound(
    const StrategyContext& ctx, VertexId u, BoundStrategy strategy,
    const std::vector<VertexId>& targets,
    const std::optional<NeCertificate>& certificate = {});

enum class LemmaId {
  kMinCycleSize,
  kSevenCycle,
  kDirectedMinCycles,
  kMaxN2,
  kAltPath,
  kX2Position,
  kDeg2,
  kObsX1,
  kObsX2,
  kObsX2Depth,
  kPathDegreeTwo,
  kRootDegree,
  kDegreeSum,
};

std::string LemmaName(LemmaId id);
std::optional<LemmaId> ParseLemma(const std::string& name);
const std::vector<LemmaId>& StructuralLemmas();  // all but kAltPath

struct AuditFinding {
  LemmaId lemma;
  // Structural preconditions (H exists, alpha range, ...) were met.
  bool applicable = false;
  // Meaningful only when applicable.
  bool holds = false;
  // The lemma presumes an equilibrium and none was certified.
  bool informational = false;
  nlohmann::json detail = nlohmann::json::object();

  // An applicable, certified finding that does not hold.
  bool IsFailure() const { return applicable && !informational && !holds; }
};

struct AuditLimits {
  std::int64_t max_min_cycle_nodes = 2'000'000;
  // Sold-edge subsets examined per (vertex, strategy).
  std::int64_t max_selections_per_vertex = 1024;
};

AuditFinding AuditStructural(const StrategyContext& ctx, LemmaId lemma,
                             const std::optional<NeCertificate>& certificate = {},
                             const AuditLimits& limits = {});

// Alternative paths around u for every w in T(uv), uv bought by u.
AuditFinding AuditAltPath(const StrategyContext& ctx, VertexId u, VertexId v,
                          const std::optional<NeCertificate>& certificate = {});

struct AuditReport {
  std::vector<AuditFinding> findings;
  std::vector<BoundComparison> bounds;
  // Families cut short by AuditLimits, named "<strategy>:u=<id>".
  std::vector<std::string> truncated;

  int ApplicableCount() const;
  int HoldsCount() const;
  int FailureCount() const;  // lemma failures plus bound violations
};

AuditReport AuditFull(const StrategyContext& ctx,
                      const std::optional<NeCertificate>& certificate = {},
                      const AuditLimits& limits = {});

struct ScaffoldOptions {
  int ring_min = 7;
  int ring_max = 14;
  int max_chords = 3;
  int max_chord_length = 3;
  int max_tree_vertices = 12;
  int max_vertices = 30;
};

// A ring of length >= 7 with hanging trees and long chord paths, girth
// >= 7 by construction, random ownership, alpha = 2n + 1.
StrategyProfile GirthSevenScaffold(std::uint64_t seed,
                                   const ScaffoldOptions& options = {});

nlohmann::json ToJson(const AuditFinding& finding);
nlohmann::json ToJson(const BoundComparison& comparison);

}  // namespace ncg

#endif  // NCG_AUDIT_H_
