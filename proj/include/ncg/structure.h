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


#ifndef NCG_STRUCTURE_H_
#define NCG_STRUCTURE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/game.h"

namespace ncg {

struct BiconnectedComponent {
  std::vector<VertexId> vertices;     // sorted
  std::vector<UndirectedEdge> edges;  // sorted

  bool Contains(VertexId v) const;
  // A bridge block has 2 vertices; anything larger contains a cycle.
  bool HasCycle() const { return vertices.size() >= 3; }
};

struct BiconnectedDecomposition {
  std::vector<BiconnectedComponent> components;  // sorted by vertex list
  int largest = -1;  // -1 only for edgeless graphs

  const BiconnectedComponent* Largest() const {
    return largest < 0 ? nullptr : &components[largest];
  }
};

// Blocks of the underlying graph. Throws kDisconnected.
BiconnectedDecomposition DecomposeBiconnected(const StrategyProfile& profile);

// The largest block if it contains a cycle; otherwise an empty component.
// This is the component H that every structural lemma quantifies over.
BiconnectedComponent CyclicCore(const BiconnectedDecomposition& blocks);

// argmin of D(v) over `candidates`, smallest id on ties.
VertexId ChooseRoot(const DistanceMatrix& dist,
                    const std::vector<VertexId>& candidates);

enum class Orientation { kDown, kUp };

// Shortest path tree T rooted at r. Parents are chosen so that every
// directed (all-down) shortest path from r lies in T.
struct SptAnalysis {
  VertexId root = 0;
  std::vector<std::optional<VertexId>> parent;
  std::vector<int> depth;
  std::vector<int> subtree_size;
  std::vector<std::vector<VertexId>> children;
  // Orientation of the edge (parent[v], v); unset for the root.
  std::vector<std::optional<Orientation>> orientation;
  // Vertex reached from r by a path of down-edges only.
  std::vector<bool> directed_reach;
  // Vertices with more than one directed-reach parent candidate.
  std::vector<VertexId> ambiguous_directed_parents;

  bool InTree(VertexId u, VertexId v) const {
    return parent[v] == u || parent[u] == v;
  }
  // Tree path u = u_0, u_1, ..., u_d = r.
  std::vector<VertexId> PathToRoot(VertexId u) const;
  // True iff w lies in T(v).
  bool InSubtree(VertexId w, VertexId v) const;
};

// Throws kDisconnected.
SptAnalysis BuildSpt(const StrategyProfile& profile, const DistanceMatrix& dist,
                     VertexId root);

// |T(uv)|: the child's subtree size for a down-edge of T, else 0. Throws
// kInvalidArgument when uv is not an edge.
int EdgeSubtreeSize(const StrategyProfile& profile, const SptAnalysis& spt,
                    VertexId u, VertexId v);

struct EdgeClass {
  UndirectedEdge edge;
  // Minimal i with edge in X_i.
  std::optional<int> level;
  // Member of some X_i^+ (classified, or an up-edge of T inside H).
  bool in_plus = false;
  bool in_tree = false;
  std::optional<Orientation> orientation;  // for tree edges
};

// One entry per edge of H, sorted by edge. Empty when H is empty.
std::vector<EdgeClass> ClassifyXSets(const StrategyProfile& profile,
                                     const SptAnalysis& spt,
                                     const BiconnectedComponent& core);

struct Cycle {
  std::vector<VertexId> vertices;  // v_0 .. v_{k-1}; v_{k-1} adjacent to v_0
  bool directed = false;
  bool min_cycle = false;

  int length() const { return static_cast<int>(vertices.size()); }
};

struct CycleReport {
  std::optional<int> girth;  // nullopt: acyclic
  // Smallest cycle through each edge that lies on a cycle, keyed by edge.
  std::map<UndirectedEdge, Cycle> per_edge;
  // C(v) for each v in H.
  std::map<VertexId, Cycle> per_vertex;
};

// Each vertex of the cycle buys exactly one of its two cycle edges.
bool IsDirectedCycle(const StrategyProfile& profile,
                     const std::vector<VertexId>& cycle);
// The cycle contains a shortest path between each pair of its vertices.
bool IsMinCycle(const DistanceMatrix& dist, const std::vector<VertexId>& cycle);

// Lexicographically smallest among the shortest cycles through uv, written
// starting u, v, ...; nullopt when uv is a bridge.
std::optional<std::vector<VertexId>> SmallestCycleThroughEdge(
    const StrategyProfile& profile, VertexId u, VertexId v);

// Girth over the whole graph; per-vertex cycles only for `core`.
CycleReport BuildCycleReport(const StrategyProfile& profile,
                             const DistanceMatrix& dist,
                             const BiconnectedComponent& core);

std::optional<int> Girth(const StrategyProfile& profile);

struct MinCycleEnumeration {
  std::vector<std::vector<VertexId>> cycles;
  bool complete = true;  // false when the node budget ran out
  std::int64_t nodes_expanded = 0;
};

// Every min-cycle of the graph, each once, starting at its smallest vertex
// with v_1 < v_{k-1}.
MinCycleEnumeration EnumerateMinCycles(const StrategyProfile& profile,
                                       const DistanceMatrix& dist,
                                       std::int64_t node_budget = 2'000'000);

enum class SSetVariant { kSomePath, kAllPaths };

struct SSet {
  std::vector<VertexId> anchor;
  VertexId via;
  std::vector<VertexId> members;  // sorted
  SSetVariant variant;
};

// S_W(v) over shortest paths from x to the set W. kSomePath: some shortest
// path from x to W contains v. kAllPaths: every one does. v is always a
// member and W \ {v} never is.
SSet ComputeSSet(const StrategyProfile& profile, const DistanceMatrix& dist,
                 const std::vector<VertexId>& anchor, VertexId via,
                 SSetVariant variant);

// H, r, T and the X-classification of one connected profile. For acyclic
// profiles `core` is empty and T is rooted at the global argmin of D.
struct StructuralView {
  DistanceMatrix dist;
  BiconnectedDecomposition blocks;
  BiconnectedComponent core;
  SptAnalysis spt;
  std::vector<EdgeClass> classes;
  std::vector<int> core_degree;  // deg_H(v), 0 outside H
  std::vector<bool> in_core;

  VertexId root() const { return spt.root; }
  bool HasCore() const { return !core.vertices.empty(); }
  // nullptr when uv is not an edge of H.
  const EdgeClass* Find(VertexId u, VertexId v) const;
};

// Throws kDisconnected.
StructuralView BuildStructuralView(const StrategyProfile& profile);

// Targets of the edges u buys whose minimal X-level is <= max_level; with
// `include_plus`, also u's up-edge inside H (X_i^+ membership).
std::vector<VertexId> SellableTargets(const StrategyProfile& profile,
                                      const StructuralView& view, VertexId u,
                                      int max_level, bool include_plus);

}  // namespace ncg

#endif  // NCG_STRUCTURE_H_
