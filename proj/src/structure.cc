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


#include "ncg/structure.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "ncg/error.h"

namespace ncg {

bool BiconnectedComponent::Contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

namespace {

void RequireConnected(const StrategyProfile& profile) {
  if (!IsConnected(profile)) {
    throw NcgError(ErrorCode::kDisconnected, "profile is not connected");
  }
}

// Hopcroft-Tarjan with an edge stack.
class BlockFinder {
 public:
  explicit BlockFinder(const StrategyProfile& profile)
      : profile_(profile),
        discovery_(profile.n(), -1),
        low_(profile.n(), 0) {}

  std::vector<BiconnectedComponent> Run() {
    for (VertexId v = 0; v < profile_.n(); ++v) {
      if (discovery_[v] < 0) Visit(v, -1);
    }
    return std::move(blocks_);
  }

 private:
  void Visit(VertexId u, VertexId parent) {
    discovery_[u] = low_[u] = timer_++;
    for (VertexId w : profile_.neighbors(u)) {
      if (w == parent) continue;
      if (discovery_[w] < 0) {
        stack_.push_back(UndirectedEdge::Of(u, w));
        Visit(w, u);
        low_[u] = std::min(low_[u], low_[w]);
        if (low_[w] >= discovery_[u]) PopBlock(UndirectedEdge::Of(u, w));
      } else if (discovery_[w] < discovery_[u]) {
        stack_.push_back(UndirectedEdge::Of(u, w));
        low_[u] = std::min(low_[u], discovery_[w]);
      }
    }
  }

  void PopBlock(UndirectedEdge until) {
    BiconnectedComponent block;
    while (true) {
      UndirectedEdge e = stack_.back();
      stack_.pop_back();
      block.edges.push_back(e);
      block.vertices.push_back(e.first);
      block.vertices.push_back(e.second);
      if (e == until) break;
    }
    std::sort(block.edges.begin(), block.edges.end());
    std::sort(block.vertices.begin(), block.vertices.end());
    block.vertices.erase(
        std::unique(block.vertices.begin(), block.vertices.end()),
        block.vertices.end());
    blocks_.push_back(std::move(block));
  }

  const StrategyProfile& profile_;
  std::vector<int> discovery_;
  std::vector<int> low_;
  int timer_ = 0;
  std::vector<UndirectedEdge> stack_;
  std::vector<BiconnectedComponent> blocks_;
};

}  // namespace

BiconnectedDecomposition DecomposeBiconnected(const StrategyProfile& profile) {
  RequireConnected(profile);
  BiconnectedDecomposition out;
  out.components = BlockFinder(profile).Run();
  std::sort(out.components.begin(), out.components.end(),
            [](const BiconnectedComponent& a, const BiconnectedComponent& b) {
              return a.vertices < b.vertices;
            });
  for (int i = 0; i < static_cast<int>(out.components.size()); ++i) {
    // Sorted order makes the first maximum the lexicographic tie-break.
    if (out.largest < 0 || out.components[i].vertices.size() >
                               out.components[out.largest].vertices.size()) {
      out.largest = i;
    }
  }
  return out;
}

BiconnectedComponent CyclicCore(const BiconnectedDecomposition& blocks) {
  const BiconnectedComponent* largest = blocks.Largest();
  if (largest == nullptr || !largest->HasCycle()) return {};
  return *largest;
}

VertexId ChooseRoot(const DistanceMatrix& dist,
                    const std::vector<VertexId>& candidates) {
  if (candidates.empty()) {
    throw NcgError(ErrorCode::kInvalidArgument, "no root candidates");
  }
  VertexId best = -1;
  std::optional<std::int64_t> best_cost;
  for (VertexId v : candidates) {
    std::optional<std::int64_t> cost = ConnectionCost(dist, v);
    bool better = false;
    if (best < 0) {
      better = true;
    } else if (cost && (!best_cost || *cost < *best_cost)) {
      better = true;
    } else if (cost == best_cost && v < best) {
      better = true;
    }
    if (better) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

std::vector<VertexId> SptAnalysis::PathToRoot(VertexId u) const {
  std::vector<VertexId> path{u};
  while (parent[path.back()]) path.push_back(*parent[path.back()]);
  return path;
}

bool SptAnalysis::InSubtree(VertexId w, VertexId v) const {
  while (depth[w] > depth[v]) w = *parent[w];
  return w == v;
}

SptAnalysis BuildSpt(const StrategyProfile& profile, const DistanceMatrix& dist,
                     VertexId root) {
  RequireConnected(profile);
  const int n = profile.n();
  SptAnalysis spt;
  spt.root = root;
  spt.parent.assign(n, std::nullopt);
  spt.depth.assign(dist.row(root).begin(), dist.row(root).end());
  spt.subtree_size.assign(n, 1);
  spt.children.assign(n, {});
  spt.orientation.assign(n, std::nullopt);
  spt.directed_reach.assign(n, false);
  spt.directed_reach[root] = true;

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return std::pair(spt.depth[a], a) < std::pair(spt.depth[b], b);
  });

  for (VertexId v : order) {
    if (v == root) continue;
    std::optional<VertexId> fallback;
    std::optional<VertexId> directed;
    int directed_candidates = 0;
    for (VertexId p : profile.neighbors(v)) {
      if (spt.depth[p] != spt.depth[v] - 1) continue;
      if (!fallback) fallback = p;
      if (spt.directed_reach[p] && profile.Buys(p, v)) {
        if (!directed) directed = p;
        ++directed_candidates;
      }
    }
    if (directed_candidates > 1) spt.ambiguous_directed_parents.push_back(v);
    const VertexId p = directed ? *directed : *fallback;
    spt.parent[v] = p;
    spt.children[p].push_back(v);
    spt.directed_reach[v] = directed.has_value();
    spt.orientation[v] =
        profile.Buys(p, v) ? Orientation::kDown : Orientation::kUp;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (spt.parent[*it]) spt.subtree_size[*spt.parent[*it]] +=
        spt.subtree_size[*it];
  }
  for (auto& kids : spt.children) std::sort(kids.begin(), kids.end());
  return spt;
}

int EdgeSubtreeSize(const StrategyProfile& profile, const SptAnalysis& spt,
                    VertexId u, VertexId v) {
  if (!profile.HasEdge(u, v)) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   std::to_string(u) + "-" + std::to_string(v) +
                       " is not an edge");
  }
  if (spt.parent[v] == u && spt.orientation[v] == Orientation::kDown) {
    return spt.subtree_size[v];
  }
  if (spt.parent[u] == v && spt.orientation[u] == Orientation::kDown) {
    return spt.subtree_size[u];
  }
  return 0;
}

std::vector<EdgeClass> ClassifyXSets(const StrategyProfile& profile,
                                     const SptAnalysis& spt,
                                     const BiconnectedComponent& core) {
  if (!core.HasCycle()) return {};
  std::vector<EdgeClass> classes;
  classes.reserve(core.edges.size());
  for (const UndirectedEdge& e : core.edges) {
    EdgeClass c;
    c.edge = e;
    c.in_tree = spt.InTree(e.first, e.second);
    if (c.in_tree) {
      const VertexId child =
          spt.parent[e.second] == e.first ? e.second : e.first;
      c.orientation = spt.orientation[child];
    } else {
      c.level = 0;
    }
    classes.push_back(c);
  }
  auto level_of = [&](VertexId a, VertexId b) -> std::optional<int> {
    auto it = std::lower_bound(
        classes.begin(), classes.end(), UndirectedEdge::Of(a, b),
        [](const EdgeClass& c, const UndirectedEdge& k) { return c.edge < k; });
    if (it == classes.end() || it->edge != UndirectedEdge::Of(a, b)) {
      return std::nullopt;
    }
    return it->level;
  };
  // Levels only decrease, so the relaxation reaches a fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (EdgeClass& c : classes) {
      if (c.orientation != Orientation::kDown) continue;
      const VertexId child = spt.parent[c.edge.second] == c.edge.first
                                 ? c.edge.second
                                 : c.edge.first;
      std::optional<int> best;
      for (VertexId t : profile.neighbors(child)) {
        if (!profile.Buys(child, t)) continue;
        std::optional<int> lvl = level_of(child, t);
        if (lvl && (!best || *lvl < *best)) best = lvl;
      }
      if (best && (!c.level || *best + 1 < *c.level)) {
        c.level = *best + 1;
        changed = true;
      }
    }
  }
  for (EdgeClass& c : classes) {
    c.in_plus = c.level.has_value() || c.orientation == Orientation::kUp;
  }
  return classes;
}

bool IsDirectedCycle(const StrategyProfile& profile,
                     const std::vector<VertexId>& cycle) {
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i) {
    const VertexId x = cycle[i];
    const int owned = (profile.Buys(x, cycle[(i + k - 1) % k]) ? 1 : 0) +
                      (profile.Buys(x, cycle[(i + 1) % k]) ? 1 : 0);
    if (owned != 1) return false;
  }
  return true;
}

bool IsMinCycle(const DistanceMatrix& dist,
                const std::vector<VertexId>& cycle) {
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const int along = std::min(j - i, k - (j - i));
      if (dist(cycle[i], cycle[j]) != along) return false;
    }
  }
  return true;
}

std::optional<std::vector<VertexId>> SmallestCycleThroughEdge(
    const StrategyProfile& profile, VertexId u, VertexId v) {
  const UndirectedEdge removed = UndirectedEdge::Of(u, v);
  std::vector<int> from_u = BfsDistances(profile, u, std::nullopt, removed);
  if (from_u[v] == kUnreachable) return std::nullopt;
  std::vector<VertexId> cycle{u, v};
  VertexId cur = v;
  while (from_u[cur] > 1) {
    for (VertexId w : profile.neighbors(cur)) {
      if (from_u[w] == from_u[cur] - 1) {
        cur = w;
        break;
      }
    }
    cycle.push_back(cur);
  }
  return cycle;
}

namespace {

Cycle MakeCycle(const StrategyProfile& profile, const DistanceMatrix& dist,
                std::vector<VertexId> vertices) {
  Cycle c;
  c.directed = IsDirectedCycle(profile, vertices);
  c.min_cycle = IsMinCycle(dist, vertices);
  c.vertices = std::move(vertices);
  return c;
}

bool ShorterOrLexSmaller(const std::vector<VertexId>& a,
                         const std::vector<VertexId>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

CycleReport BuildCycleReport(const StrategyProfile& profile,
                             const DistanceMatrix& dist,
                             const BiconnectedComponent& core) {
  CycleReport report;
  for (const UndirectedEdge& e : profile.undirected_edges()) {
    auto cycle = SmallestCycleThroughEdge(profile, e.first, e.second);
    if (!cycle) continue;
    const int len = static_cast<int>(cycle->size());
    if (!report.girth || len < *report.girth) report.girth = len;
    report.per_edge.emplace(e, MakeCycle(profile, dist, std::move(*cycle)));
  }
  for (VertexId v : core.vertices) {
    std::optional<std::vector<VertexId>> best;
    for (VertexId w : profile.neighbors(v)) {
      if (!report.per_edge.contains(UndirectedEdge::Of(v, w))) continue;
      auto cycle = SmallestCycleThroughEdge(profile, v, w);
      if (!best || ShorterOrLexSmaller(*cycle, *best)) best = std::move(cycle);
    }
    if (best) {
      report.per_vertex.emplace(v, MakeCycle(profile, dist, std::move(*best)));
    }
  }
  return report;
}

std::optional<int> Girth(const StrategyProfile& profile) {
  std::optional<int> girth;
  for (const UndirectedEdge& e : profile.undirected_edges()) {
    std::vector<int> d =
        BfsDistances(profile, e.first, std::nullopt, e);
    if (d[e.second] == kUnreachable) continue;
    if (!girth || d[e.second] + 1 < *girth) girth = d[e.second] + 1;
  }
  return girth;
}

namespace {

// Depth-first walk over paths whose every vertex pair already sits at its
// cycle distance, so only min-cycles survive to closure.
class MinCycleSearch {
 public:
  MinCycleSearch(const StrategyProfile& profile, const DistanceMatrix& dist,
                 std::int64_t budget, MinCycleEnumeration& out)
      : profile_(profile), dist_(dist), budget_(budget), out_(out) {}

  void Run() {
    const int n = profile_.n();
    for (VertexId s = 0; s < n && out_.complete; ++s) {
      for (int k = 3; k <= n && out_.complete; ++k) {
        length_ = k;
        path_.assign(1, s);
        Extend();
      }
    }
  }

 private:
  bool Fits(VertexId x) const {
    const int p = static_cast<int>(path_.size());
    for (int q = 0; q < p; ++q) {
      const int along = std::min(p - q, length_ - (p - q));
      if (dist_(path_[q], x) != along) return false;
    }
    return true;
  }

  void Extend() {
    if (++out_.nodes_expanded > budget_) {
      out_.complete = false;
      return;
    }
    const VertexId s = path_.front();
    if (static_cast<int>(path_.size()) == length_) {
      if (profile_.HasEdge(path_.back(), s) && path_[1] < path_.back()) {
        out_.cycles.push_back(path_);
      }
      return;
    }
    for (VertexId x : profile_.neighbors(path_.back())) {
      if (x <= s || !Fits(x)) continue;
      path_.push_back(x);
      Extend();
      path_.pop_back();
      if (!out_.complete) return;
    }
  }

  const StrategyProfile& profile_;
  const DistanceMatrix& dist_;
  std::int64_t budget_;
  MinCycleEnumeration& out_;
  int length_ = 0;
  std::vector<VertexId> path_;
};

}  // namespace

MinCycleEnumeration EnumerateMinCycles(const StrategyProfile& profile,
                                       const DistanceMatrix& dist,
                                       std::int64_t node_budget) {
  MinCycleEnumeration out;
  MinCycleSearch(profile, dist, node_budget, out).Run();
  return out;
}

SSet ComputeSSet(const StrategyProfile& profile, const DistanceMatrix& dist,
                 const std::vector<VertexId>& anchor, VertexId via,
                 SSetVariant variant) {
  if (anchor.empty()) {
    throw NcgError(ErrorCode::kInvalidArgument, "S-set anchor is empty");
  }
  const int n = profile.n();
  std::vector<bool> in_anchor(n, false);
  for (VertexId w : anchor) in_anchor[w] = true;

  std::vector<std::vector<int>> avoiding;  // distances in G - via
  if (variant == SSetVariant::kAllPaths) {
    for (VertexId w : anchor) {
      avoiding.push_back(w == via ? std::vector<int>()
                                  : BfsDistances(profile, w, via));
    }
  }

  SSet out{anchor, via, {}, variant};
  for (VertexId x = 0; x < n; ++x) {
    if (x == via) {
      out.members.push_back(x);
      continue;
    }
    if (in_anchor[x]) continue;
    int nearest = kUnreachable;
    for (VertexId w : anchor) nearest = std::min(nearest, dist(x, w));
    if (nearest == kUnreachable) continue;
    bool some = false;
    bool all = true;
    for (std::size_t i = 0; i < anchor.size(); ++i) {
      const VertexId w = anchor[i];
      if (dist(x, w) != nearest) continue;
      const bool through =
          dist.IsFinite(x, via) && dist.IsFinite(via, w) &&
          dist(x, via) + dist(via, w) == dist(x, w);
      some = some || through;
      if (variant == SSetVariant::kAllPaths && w != via) {
        const int without = avoiding[i][x];
        if (without != kUnreachable && without <= dist(x, w)) all = false;
      }
    }
    const bool member = variant == SSetVariant::kSomePath ? some : all;
    if (member) out.members.push_back(x);
  }
  return out;
}

const EdgeClass* StructuralView::Find(VertexId u, VertexId v) const {
  const UndirectedEdge key = UndirectedEdge::Of(u, v);
  auto it = std::lower_bound(
      classes.begin(), classes.end(), key,
      [](const EdgeClass& c, const UndirectedEdge& k) { return c.edge < k; });
  if (it == classes.end() || it->edge != key) return nullptr;
  return &*it;
}

StructuralView BuildStructuralView(const StrategyProfile& profile) {
  RequireConnected(profile);
  DistanceMatrix dist = AllPairsDistances(profile);
  BiconnectedDecomposition blocks = DecomposeBiconnected(profile);
  BiconnectedComponent core = CyclicCore(blocks);
  std::vector<VertexId> candidates = core.vertices;
  if (candidates.empty()) {
    candidates.resize(profile.n());
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  const VertexId root = ChooseRoot(dist, candidates);
  SptAnalysis spt = BuildSpt(profile, dist, root);
  std::vector<EdgeClass> classes = ClassifyXSets(profile, spt, core);
  std::vector<int> core_degree(profile.n(), 0);
  std::vector<bool> in_core(profile.n(), false);
  for (VertexId v : core.vertices) in_core[v] = true;
  for (const UndirectedEdge& e : core.edges) {
    ++core_degree[e.first];
    ++core_degree[e.second];
  }
  return StructuralView{std::move(dist),    std::move(blocks),
                        std::move(core),    std::move(spt),
                        std::move(classes), std::move(core_degree),
                        std::move(in_core)};
}

std::vector<VertexId> SellableTargets(const StrategyProfile& profile,
                                      const StructuralView& view, VertexId u,
                                      int max_level, bool include_plus) {
  std::vector<VertexId> out;
  for (VertexId t : profile.Strategy(u)) {
    const EdgeClass* c = view.Find(u, t);
    if (c == nullptr) continue;
    const bool leveled = c->level && *c->level <= max_level;
    const bool up = include_plus && c->orientation == Orientation::kUp;
    if (leveled || up) out.push_back(t);
  }
  return out;
}

}  // namespace ncg
