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


#ifndef NCG_EQUILIBRIUM_H_
#define NCG_EQUILIBRIUM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncg/game.h"
#include "ncg/rational.h"

namespace ncg {

// One agent replacing its whole strategy.
struct Deviation {
  VertexId vertex;
  std::vector<VertexId> new_edge_set;  // sorted, without `vertex`

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

enum class DeviationKind {
  kExactAllSubsets,
  kSingleAdd,
  kSingleDelete,
  kSingleSwap,
  kKSubset,
  kBoundStrategy1,  // sell a nonempty subset of bought X_{<=2} edges
  kBoundStrategy2,  // ... and buy the edge to r
  kBoundStrategy3,  // sell from X^+_{<=2}, buy the edge to r
  kComposite,
};

struct DeviationClass {
  DeviationKind kind = DeviationKind::kExactAllSubsets;
  int k = 0;                          // kKSubset only
  std::vector<DeviationClass> parts;  // kComposite only

  static DeviationClass Exact() { return {}; }
  static DeviationClass Of(DeviationKind kind) { return {kind, 0, {}}; }
  static DeviationClass KSubset(int k);
  static DeviationClass Composite(std::vector<DeviationClass> parts);

  bool IsExact() const { return kind == DeviationKind::kExactAllSubsets; }

  // "exact", "add", "delete", "swap", "k-subset:K", "strategy1",
  // "strategy2", "strategy3", composites joined with '+'.
  std::string Name() const;
  static DeviationClass Parse(const std::string& text);

  friend bool operator==(const DeviationClass&,
                         const DeviationClass&) = default;
};

struct EngineLimits {
  // Maximum number of candidate strategies enumerated per agent.
  std::int64_t max_deviations_per_vertex = std::int64_t{1} << 16;
  // Largest n accepted by EnumerateEquilibria.
  int max_enumeration_n = 5;
};

// c_v(new) - c_v(old) by full recomputation. Throws kSelfLoop /
// kVertexOutOfRange for invalid targets.
CostChange DeltaCost(const StrategyProfile& profile, VertexId v,
                     const std::vector<VertexId>& new_edge_set);

Cost AgentCost(const StrategyProfile& profile, VertexId v);

struct BestResponse {
  std::vector<VertexId> edge_set;
  CostChange delta;
};

// Minimises c_v over all subsets of V \ {v}; ties go to fewer edges, then
// the lexicographically smaller set. Throws kBudgetExceeded.
BestResponse BestResponseExact(const StrategyProfile& profile, VertexId v,
                               const EngineLimits& limits = {});

// Calls `visit` for each strategy in the class for vertex v, in a fixed
// order; `visit` returns false to stop early. Throws kBudgetExceeded for
// exact-style classes over the limit.
void ForEachDeviation(const StrategyProfile& profile, VertexId v,
                      const DeviationClass& cls, const EngineLimits& limits,
                      const std::function<bool(const Deviation&)>& visit);

struct Witness {
  Deviation deviation;
  CostChange delta;
};

struct VerificationReport {
  std::string profile_hash;
  DeviationClass deviation_class;
  // False when the profile is disconnected and no checked deviation
  // reconnects an agent, so no verdict can be given.
  bool verifiable = true;
  bool is_equilibrium = false;
  std::optional<Witness> witness;
  std::int64_t deviations_checked = 0;
};

VerificationReport VerifyEquilibrium(const StrategyProfile& profile,
                                     const DeviationClass& cls,
                                     const EngineLimits& limits = {});

// Best improving deviation of v within the class (most negative delta,
// first generated on ties); nullopt when none improves.
std::optional<Witness> BestImprovingDeviation(const StrategyProfile& profile,
                                              VertexId v,
                                              const DeviationClass& cls,
                                              const EngineLimits& limits = {});

enum class VertexOrder { kRoundRobin, kRandom };

struct DynamicsStep {
  VertexId vertex;
  Deviation deviation;
  CostChange delta;
};

struct DynamicsTrace {
  std::vector<DynamicsStep> steps;
  bool converged = false;
  StrategyProfile final_profile;
};

DynamicsTrace BestResponseDynamics(const StrategyProfile& initial,
                                   const DeviationClass& cls,
                                   VertexOrder order, int max_iters,
                                   std::uint64_t seed,
                                   const EngineLimits& limits = {});

// Number of unordered pairs among n vertices.
inline int PairCount(int n) { return n * (n - 1) / 2; }

// Profile number `index` in base 3 over pairs (0,1), (0,2), ..., (n-2,n-1):
// digit 0 absent, 1 bought by the lower id, 2 bought by the higher id.
StrategyProfile ProfileFromIndex(int n, const Rational& alpha,
                                 std::int64_t index);
std::int64_t ProfileSpaceSize(int n);

struct EnumeratedEquilibrium {
  std::int64_t index;
  StrategyProfile profile;
  VerificationReport report;
};

struct EnumerationResult {
  std::int64_t profiles_scanned = 0;
  std::int64_t connected_profiles = 0;
  std::vector<EnumeratedEquilibrium> equilibria;  // ascending index
};

// Verifies every connected labeled profile. `jobs` workers shard the index
// space; the result does not depend on `jobs`. Throws kBudgetExceeded when
// n exceeds limits.max_enumeration_n.
EnumerationResult EnumerateEquilibria(int n, const Rational& alpha,
                                      const DeviationClass& cls,
                                      const EngineLimits& limits = {},
                                      int jobs = 1);

// Each pair present with probability `edge_density`, buyer by fair coin.
// With `require_connected`, redraws (advancing the same stream) until the
// graph is connected or `max_attempts` is reached.
StrategyProfile RandomProfile(int n, double edge_density, std::uint64_t seed,
                              const Rational& alpha = 1,
                              bool require_connected = false,
                              int max_attempts = 1000);

}  // namespace ncg

#endif  // NCG_EQUILIBRIUM_H_
