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


#ifndef NCG_TESTS_ORACLES_H_
#define NCG_TESTS_ORACLES_H_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ncg/game.h"
#include "ncg/rational.h"

// Slow reference implementations that share no code with the library
// beyond the StrategyProfile container.
namespace ncg::oracle {

inline constexpr int kInf = 1 << 20;

using Matrix = std::vector<std::vector<int>>;

inline StrategyProfile Make(int n, Rational alpha,
                            std::vector<std::pair<int, int>> bought) {
  std::vector<BoughtEdge> edges;
  for (auto [b, o] : bought) edges.push_back({b, o});
  return StrategyProfile(n, alpha, std::move(edges));
}

inline StrategyProfile DirectedCycle(int k, Rational alpha) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
  return Make(k, alpha, e);
}

inline StrategyProfile Path3(Rational alpha) {
  return Make(3, alpha, {{0, 1}, {1, 2}});
}

inline StrategyProfile Triangle(Rational alpha) {
  return DirectedCycle(3, alpha);
}

inline StrategyProfile Star(int n, Rational alpha) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({0, i});
  return Make(n, alpha, e);
}

inline Matrix Adjacency(int n, std::span<const BoughtEdge> edges) {
  Matrix adj(n, std::vector<int>(n, 0));
  for (const BoughtEdge& e : edges) adj[e.buyer][e.other] = adj[e.other][e.buyer] = 1;
  return adj;
}

inline Matrix Adjacency(const StrategyProfile& p) {
  return Adjacency(p.n(), p.bought_edges());
}

inline Matrix FloydWarshall(const Matrix& adj) {
  const int n = static_cast<int>(adj.size());
  Matrix d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j) {
      if (adj[i][j]) d[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

// c_v by definition; nullopt when some vertex is unreachable.
inline std::optional<Rational> CostOf(int n, const Rational& alpha,
                                      std::span<const BoughtEdge> edges,
                                      int v) {
  const Matrix d = FloydWarshall(Adjacency(n, edges));
  Rational total = 0;
  for (const BoughtEdge& e : edges) {
    if (e.buyer == v) total += alpha;
  }
  for (int u = 0; u < n; ++u) {
    if (d[v][u] >= kInf) return std::nullopt;
    total += d[v][u];
  }
  return total;
}

inline std::vector<BoughtEdge> Replace(const StrategyProfile& p, int v,
                                       const std::vector<int>& targets) {
  std::vector<BoughtEdge> out;
  for (const BoughtEdge& e : p.bought_edges()) {
    if (e.buyer != v) out.push_back(e);
  }
  for (int t : targets) out.push_back({v, t});
  return out;
}

// Every simple cycle once, as a vertex list starting at its smallest vertex
// with the second vertex smaller than the last.
inline std::vector<std::vector<int>> SimpleCycles(const Matrix& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<bool> used(n, false);
  auto dfs = [&](auto&& self, int start, int at) -> void {
    for (int next = start + 1; next < n; ++next) {
      if (!adj[at][next] || used[next]) continue;
      used[next] = true;
      path.push_back(next);
      if (path.size() >= 3 && adj[next][start] && path[1] < path.back()) {
        out.push_back(path);
      }
      self(self, start, next);
      path.pop_back();
      used[next] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    used.assign(n, false);
    used[s] = true;
    dfs(dfs, s, s);
  }
  return out;
}

inline std::optional<int> Girth(const Matrix& adj) {
  std::optional<int> best;
  for (const auto& c : SimpleCycles(adj)) {
    if (!best || static_cast<int>(c.size()) < *best) best = c.size();
  }
  return best;
}

// Blocks as edge sets: two edges share a block iff a simple cycle contains
// both; a bridge is a block alone.
inline std::set<std::set<UndirectedEdge>> Blocks(const Matrix& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<UndirectedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj[i][j]) edges.push_back({i, j});
    }
  }
  std::vector<int> parent(edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](int a, int b) {
    const UndirectedEdge e = UndirectedEdge::Of(a, b);
    return static_cast<int>(std::find(edges.begin(), edges.end(), e) -
                            edges.begin());
  };
  for (const auto& c : SimpleCycles(adj)) {
    const int first = index(c[0], c[1]);
    for (std::size_t i = 0; i < c.size(); ++i) {
      parent[find(index(c[i], c[(i + 1) % c.size()]))] = find(first);
    }
  }
  std::map<int, std::set<UndirectedEdge>> groups;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    groups[find(static_cast<int>(i))].insert(edges[i]);
  }
  std::set<std::set<UndirectedEdge>> out;
  for (auto& [k, g] : groups) out.insert(g);
  return out;
}

// Every shortest x-w path as a vertex list.
inline std::vector<std::vector<int>> ShortestPaths(const Matrix& adj,
                                                   const Matrix& d, int x,
                                                   int w) {
  std::vector<std::vector<int>> out;
  if (d[x][w] >= kInf) return out;
  std::vector<int> path{x};
  auto dfs = [&](auto&& self, int at) -> void {
    if (at == w) {
      out.push_back(path);
      return;
    }
    for (int nb = 0; nb < static_cast<int>(adj.size()); ++nb) {
      if (adj[at][nb] && d[nb][w] == d[at][w] - 1) {
        path.push_back(nb);
        self(self, nb);
        path.pop_back();
      }
    }
  };
  dfs(dfs, x);
  return out;
}

// No agent has a strictly cheaper strategy among all 2^(n-1) subsets.
inline bool IsNashExact(const StrategyProfile& p) {
  const int n = p.n();
  for (int v = 0; v < n; ++v) {
    const std::optional<Rational> now = CostOf(n, p.alpha(), p.bought_edges(), v);
    std::vector<int> others;
    for (int u = 0; u < n; ++u) {
      if (u != v) others.push_back(u);
    }
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      std::vector<int> t;
      for (int i = 0; i < n - 1; ++i) {
        if ((mask >> i) & 1) t.push_back(others[i]);
      }
      const std::optional<Rational> after =
          CostOf(n, p.alpha(), Replace(p, v, t), v);
      if (!after) continue;
      if (!now || *after < *now) return false;
    }
  }
  return true;
}

}  // namespace ncg::oracle

#endif  // NCG_TESTS_ORACLES_H_
