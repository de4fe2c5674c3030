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


#include <random>

#include "doctest.h"
#include "ncg/equilibrium.h"
#include "ncg/error.h"
#include "ncg/structure.h"
#include "oracles.h"

namespace ncg {
namespace {

using oracle::Make;

std::vector<StrategyProfile> RandomConnected(int count, int max_n,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<StrategyProfile> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 3 + static_cast<int>(rng() % (max_n - 2));
    const double density = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100;
    StrategyProfile p = RandomProfile(n, density, rng(), 1, true);
    if (IsConnected(p)) out.push_back(std::move(p));
  }
  return out;
}

// C7 with the path 7 - 8 - 9 hanging off vertex 3.
StrategyProfile RingWithTail() {
  return Make(10, 1,
              {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0},
               {3, 7}, {7, 8}, {8, 9}});
}

TEST_CASE("biconnected decomposition examples") {
  const StrategyProfile pendant = Make(4, 1, {{0, 1}, {1, 2}, {2, 0}, {3, 0}});
  const BiconnectedDecomposition a = DecomposeBiconnected(pendant);
  CHECK(a.Largest()->vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(CyclicCore(a).vertices == std::vector<VertexId>{0, 1, 2});

  const StrategyProfile tree = Make(4, 1, {{0, 1}, {1, 2}, {1, 3}});
  const BiconnectedDecomposition b = DecomposeBiconnected(tree);
  CHECK(b.components.size() == 3);
  for (const auto& c : b.components) CHECK(c.vertices.size() == 2);
  CHECK(b.Largest()->vertices.size() == 2);
  CHECK(CyclicCore(b).vertices.empty());

  const StrategyProfile bowtie =
      Make(5, 1, {{0, 3}, {3, 4}, {4, 0}, {0, 1}, {1, 2}, {2, 0}});
  const BiconnectedDecomposition c = DecomposeBiconnected(bowtie);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].vertices.size() == 3);
  CHECK(c.components[1].vertices.size() == 3);
  CHECK(c.Largest()->vertices == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("biconnected decomposition rejects disconnected input") {
  try {
    DecomposeBiconnected(Make(3, 1, {{0, 1}}));
    FAIL("expected an error");
  } catch (const NcgError& e) {
    CHECK(e.code() == ErrorCode::kDisconnected);
  }
}

TEST_CASE("biconnected decomposition matches the cycle oracle") {
  for (const StrategyProfile& p : RandomConnected(150, 8, 11)) {
    std::set<std::set<UndirectedEdge>> got;
    for (const auto& c : DecomposeBiconnected(p).components) {
      got.insert(std::set<UndirectedEdge>(c.edges.begin(), c.edges.end()));
    }
    REQUIRE(got == oracle::Blocks(oracle::Adjacency(p)));
  }
}

TEST_CASE("choose root examples") {
  const StrategyProfile c7 = oracle::DirectedCycle(7, 1);
  CHECK(ChooseRoot(AllPairsDistances(c7), {0, 1, 2, 3, 4, 5, 6}) == 0);

  const StrategyProfile tail = RingWithTail();
  const oracle::Matrix fw = oracle::FloydWarshall(oracle::Adjacency(tail));
  int best = 0;
  for (int v = 1; v < 7; ++v) {
    auto sum = [&](int x) { return std::accumulate(fw[x].begin(), fw[x].end(), 0); };
    if (sum(v) < sum(best)) best = v;
  }
  REQUIRE(best == 3);
  CHECK(ChooseRoot(AllPairsDistances(tail), {0, 1, 2, 3, 4, 5, 6}) == 3);

  const StrategyProfile edge = Make(2, 1, {{1, 0}});
  CHECK(ChooseRoot(AllPairsDistances(edge), {0, 1}) == 0);
}

TEST_CASE("shortest path tree examples") {
  const StrategyProfile path = Make(3, 1, {{1, 0}, {1, 2}});
  const SptAnalysis a = BuildSpt(path, AllPairsDistances(path), 0);
  CHECK(a.depth[2] == 2);
  CHECK(a.subtree_size[1] == 2);
  CHECK(a.orientation[1] == Orientation::kUp);
  CHECK(a.orientation[2] == Orientation::kDown);

  const StrategyProfile c7 = oracle::DirectedCycle(7, 1);
  const SptAnalysis t = BuildSpt(c7, AllPairsDistances(c7), 0);
  for (int v = 0; v < 7; ++v) CHECK(t.depth[v] == std::min(v, 7 - v));
  CHECK(t.parent[1] == 0);
  CHECK(t.parent[2] == 1);
  CHECK(t.parent[3] == 2);
  CHECK(t.parent[4] == 5);
  for (int v = 1; v <= 3; ++v) {
    CHECK(t.orientation[v] == Orientation::kDown);
    CHECK(t.directed_reach[v]);
  }
  CHECK(t.orientation[4] == Orientation::kUp);

  const StrategyProfile star = oracle::Star(5, 1);
  const SptAnalysis s = BuildSpt(star, AllPairsDistances(star), 0);
  for (int v = 1; v < 5; ++v) {
    CHECK(s.orientation[v] == Orientation::kDown);
    CHECK(s.subtree_size[v] == 1);
  }
  CHECK(s.subtree_size[0] == 5);
}

TEST_CASE("shortest path tree properties") {
  for (const StrategyProfile& p : RandomConnected(300, 10, 21)) {
    const DistanceMatrix d = AllPairsDistances(p);
    const int n = p.n();
    const VertexId r = static_cast<VertexId>(p.n() / 2);
    const SptAnalysis t = BuildSpt(p, d, r);
    REQUIRE(t.subtree_size[r] == n);
    for (int v = 0; v < n; ++v) {
      REQUIRE(t.depth[v] == d(r, v));
      int sum = 1;
      for (VertexId c : t.children[v]) sum += t.subtree_size[c];
      REQUIRE(sum == t.subtree_size[v]);
      if (v != r) {
        REQUIRE(t.parent[v]);
        REQUIRE(p.HasEdge(*t.parent[v], v));
        const bool down = p.Buys(*t.parent[v], v);
        REQUIRE((t.orientation[v] == Orientation::kDown) == down);
      }
    }
    if (!t.ambiguous_directed_parents.empty()) continue;
    const oracle::Matrix adj = oracle::Adjacency(p);
    const oracle::Matrix fw = oracle::FloydWarshall(adj);
    for (int u = 0; u < n; ++u) {
      for (const auto& path : oracle::ShortestPaths(adj, fw, r, u)) {
        bool directed = true;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          directed = directed && p.Buys(path[i], path[i + 1]);
        }
        if (!directed) continue;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          REQUIRE(t.parent[path[i + 1]] == path[i]);
        }
      }
    }
  }
}

TEST_CASE("edge subtree size examples") {
  const StrategyProfile star = oracle::Star(4, 1);
  const SptAnalysis s = BuildSpt(star, AllPairsDistances(star), 0);
  CHECK(EdgeSubtreeSize(star, s, 0, 2) == 1);
  CHECK(EdgeSubtreeSize(star, s, 2, 0) == 1);

  const StrategyProfile c7 = oracle::DirectedCycle(7, 1);
  const SptAnalysis t = BuildSpt(c7, AllPairsDistances(c7), 0);
  CHECK(EdgeSubtreeSize(c7, t, 0, 1) == 3);
  CHECK(EdgeSubtreeSize(c7, t, 5, 4) == 0);  // up-edge
  CHECK(EdgeSubtreeSize(c7, t, 3, 4) == 0);  // out-edge
  CHECK_THROWS_AS(EdgeSubtreeSize(c7, t, 0, 3), NcgError);
}

TEST_CASE("x-set classification examples") {
  const StrategyProfile c7 = oracle::DirectedCycle(7, 1);
  const StructuralView view = BuildStructuralView(c7);
  REQUIRE(view.root() == 0);
  CHECK(view.Find(3, 4)->level == 0);
  CHECK(view.Find(2, 3)->level == 1);
  CHECK(view.Find(1, 2)->level == 2);
  CHECK(view.Find(0, 1)->level == 3);
  for (auto [a, b] : {std::pair{4, 5}, {5, 6}, {6, 0}}) {
    const EdgeClass* c = view.Find(a, b);
    CHECK_FALSE(c->level);
    CHECK(c->in_plus);
    CHECK(c->orientation == Orientation::kUp);
  }
  CHECK(SellableTargets(c7, view, 3, 2, false) == std::vector<VertexId>{4});
  CHECK(SellableTargets(c7, view, 4, 2, false).empty());
  CHECK(SellableTargets(c7, view, 4, 2, true) == std::vector<VertexId>{5});
  CHECK(SellableTargets(c7, view, 0, 2, false).empty());

  const StrategyProfile tree = Make(4, 1, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(BuildStructuralView(tree).classes.empty());
}

TEST_CASE("x-set levels are minimal and closed") {
  for (const StrategyProfile& p : RandomConnected(300, 10, 31)) {
    const StructuralView view = BuildStructuralView(p);
    const SptAnalysis& t = view.spt;
    for (const EdgeClass& c : view.classes) {
      const auto [a, b] = c.edge;
      CHECK(c.in_tree == t.InTree(a, b));
      if (!c.in_tree) {
        REQUIRE(c.level == 0);
        continue;
      }
      const VertexId parent = t.parent[b] == a ? a : b;
      const VertexId child = parent == a ? b : a;
      const bool down = p.Buys(parent, child);
      std::optional<int> best;
      if (down) {
        for (VertexId w : p.Strategy(child)) {
          if (w == parent) continue;
          const EdgeClass* e = view.Find(child, w);
          if (e && e->level && (!best || *e->level < *best)) best = e->level;
        }
      }
      const std::optional<int> expected =
          best ? std::optional<int>(*best + 1) : std::nullopt;
      REQUIRE(c.level == expected);
      REQUIRE(c.in_plus == (c.level.has_value() || !down));
    }
  }
}

TEST_CASE("cycle report examples") {
  const StrategyProfile tree = Make(4, 1, {{0, 1}, {1, 2}, {1, 3}});
  const StructuralView tv = BuildStructuralView(tree);
  CHECK_FALSE(BuildCycleReport(tree, tv.dist, tv.core).girth);

  const StrategyProfile c5 = oracle::DirectedCycle(5, 1);
  const StructuralView v5 = BuildStructuralView(c5);
  const CycleReport r5 = BuildCycleReport(c5, v5.dist, v5.core);
  CHECK(r5.girth == 5);
  for (const auto& [edge, cycle] : r5.per_edge) {
    CHECK(cycle.min_cycle);
    CHECK(cycle.directed);
  }

  const StrategyProfile bent = Make(5, 1, {{0, 1}, {0, 4}, {2, 1}, {3, 2}, {4, 3}});
  const StructuralView vb = BuildStructuralView(bent);
  const CycleReport rb = BuildCycleReport(bent, vb.dist, vb.core);
  CHECK(rb.girth == 5);
  CHECK_FALSE(rb.per_vertex.at(0).directed);
  CHECK_FALSE(IsDirectedCycle(bent, {0, 1, 2, 3, 4}));
}

bool OracleMinCycle(const oracle::Matrix& fw, const std::vector<int>& c) {
  const int k = static_cast<int>(c.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (fw[c[i]][c[j]] != std::min(j - i, k - (j - i))) return false;
    }
  }
  return true;
}

TEST_CASE("smallest cycles through edges are min-cycles") {
  for (const StrategyProfile& p : RandomConnected(300, 9, 41)) {
    const StructuralView view = BuildStructuralView(p);
    const CycleReport report = BuildCycleReport(p, view.dist, view.core);
    const oracle::Matrix adj = oracle::Adjacency(p);
    const oracle::Matrix fw = oracle::FloydWarshall(adj);
    const auto cycles = oracle::SimpleCycles(adj);
    REQUIRE(report.girth == oracle::Girth(adj));
    for (const UndirectedEdge& e : p.undirected_edges()) {
      std::optional<int> shortest;
      for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (UndirectedEdge::Of(c[i], c[(i + 1) % c.size()]) == e &&
              (!shortest || static_cast<int>(c.size()) < *shortest)) {
            shortest = c.size();
          }
        }
      }
      const auto found = SmallestCycleThroughEdge(p, e.first, e.second);
      REQUIRE(found.has_value() == shortest.has_value());
      if (!found) continue;
      REQUIRE(static_cast<int>(found->size()) == *shortest);
      REQUIRE((*found)[0] == e.first);
      REQUIRE((*found)[1] == e.second);
      REQUIRE(std::set<int>(found->begin(), found->end()).size() ==
              found->size());
      for (std::size_t i = 0; i < found->size(); ++i) {
        REQUIRE(p.HasEdge((*found)[i], (*found)[(i + 1) % found->size()]));
      }
      REQUIRE(OracleMinCycle(fw, *found));
      REQUIRE(IsMinCycle(view.dist, *found));
    }
  }
}

TEST_CASE("min-cycle enumeration matches the oracle") {
  for (const StrategyProfile& p : RandomConnected(150, 8, 51)) {
    const oracle::Matrix adj = oracle::Adjacency(p);
    const oracle::Matrix fw = oracle::FloydWarshall(adj);
    std::set<std::vector<int>> expected;
    for (const auto& c : oracle::SimpleCycles(adj)) {
      if (OracleMinCycle(fw, c)) expected.insert(c);
    }
    const MinCycleEnumeration got = EnumerateMinCycles(p, AllPairsDistances(p));
    REQUIRE(got.complete);
    REQUIRE(std::set<std::vector<int>>(got.cycles.begin(), got.cycles.end()) ==
            expected);
    REQUIRE(got.cycles.size() == expected.size());
  }
}

TEST_CASE("min-cycle enumeration reports an exhausted budget") {
  const StrategyProfile k6 = RandomProfile(8, 1.0, 3);
  const MinCycleEnumeration got = EnumerateMinCycles(k6, AllPairsDistances(k6), 5);
  CHECK_FALSE(got.complete);
}

TEST_CASE("s-set examples") {
  const StrategyProfile path = oracle::Path3(1);
  const DistanceMatrix d = AllPairsDistances(path);
  for (SSetVariant v : {SSetVariant::kSomePath, SSetVariant::kAllPaths}) {
    CHECK(ComputeSSet(path, d, {0}, 1, v).members == std::vector<VertexId>{1, 2});
  }
  const StrategyProfile c4 = oracle::DirectedCycle(4, 1);
  const DistanceMatrix d4 = AllPairsDistances(c4);
  CHECK(ComputeSSet(c4, d4, {0}, 1, SSetVariant::kAllPaths).members ==
        std::vector<VertexId>{1});
  CHECK(ComputeSSet(c4, d4, {0}, 1, SSetVariant::kSomePath).members ==
        std::vector<VertexId>{1, 2});
}

TEST_CASE("s-sets match shortest path enumeration") {
  std::mt19937_64 rng(61);
  for (const StrategyProfile& p : RandomConnected(200, 8, 71)) {
    const int n = p.n();
    const oracle::Matrix adj = oracle::Adjacency(p);
    const oracle::Matrix fw = oracle::FloydWarshall(adj);
    const DistanceMatrix d = AllPairsDistances(p);
    std::vector<VertexId> anchor;
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) anchor.push_back(v);
    }
    if (anchor.empty()) anchor.push_back(0);
    const VertexId via = static_cast<VertexId>(rng() % n);
    if (std::find(anchor.begin(), anchor.end(), via) != anchor.end() &&
        anchor.size() > 1) {
      continue;
    }
    std::vector<VertexId> some{};
    std::vector<VertexId> all{};
    for (int x = 0; x < n; ++x) {
      if (x == via) {
        some.push_back(x);
        all.push_back(x);
        continue;
      }
      if (std::find(anchor.begin(), anchor.end(), x) != anchor.end()) continue;
      int nearest = oracle::kInf;
      for (VertexId w : anchor) nearest = std::min(nearest, fw[x][w]);
      bool any_through = false;
      bool every_through = true;
      for (VertexId w : anchor) {
        if (fw[x][w] != nearest) continue;
        for (const auto& path : oracle::ShortestPaths(adj, fw, x, w)) {
          const bool through =
              std::find(path.begin(), path.end(), via) != path.end();
          any_through = any_through || through;
          every_through = every_through && through;
        }
      }
      if (any_through) some.push_back(x);
      if (every_through) all.push_back(x);
    }
    const SSet s = ComputeSSet(p, d, anchor, via, SSetVariant::kSomePath);
    const SSet a = ComputeSSet(p, d, anchor, via, SSetVariant::kAllPaths);
    REQUIRE(s.members == some);
    REQUIRE(a.members == all);
    REQUIRE(std::includes(s.members.begin(), s.members.end(),
                          a.members.begin(), a.members.end()));
  }
}

}  // namespace
}  // namespace ncg
