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


#include "ncg/game.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <string>

#include "ncg/error.h"

namespace ncg {

StrategyProfile::StrategyProfile(int n, Rational alpha,
                                 std::vector<BoughtEdge> edges,
                                 int max_vertices)
    : n_(n),
      alpha_(alpha),
      max_vertices_(max_vertices),
      edges_(std::move(edges)) {
  if (n < 1) {
    throw NcgError(ErrorCode::kInvalidArgument, "n must be at least 1");
  }
  if (n > max_vertices) {
    throw NcgError(ErrorCode::kTooManyVertices,
                   "n = " + std::to_string(n) + " exceeds the cap of " +
                       std::to_string(max_vertices));
  }
  if (alpha < 0) {
    throw NcgError(ErrorCode::kInvalidArgument, "alpha must be non-negative");
  }
  owner_bits_.assign(static_cast<std::size_t>(n) * n, 0);
  bought_count_.assign(n, 0);
  adjacency_.assign(n, {});
  std::sort(edges_.begin(), edges_.end());
  for (const BoughtEdge& e : edges_) {
    if (e.buyer < 0 || e.buyer >= n || e.other < 0 || e.other >= n) {
      throw NcgError(ErrorCode::kVertexOutOfRange,
                     "edge " + std::to_string(e.buyer) + "->" +
                         std::to_string(e.other) + " outside [0, " +
                         std::to_string(n) + ")");
    }
    if (e.buyer == e.other) {
      throw NcgError(ErrorCode::kSelfLoop,
                     "self-loop at vertex " + std::to_string(e.buyer));
    }
    std::uint8_t& bit = owner_bits_[Index(e.buyer, e.other)];
    if (bit != 0) {
      throw NcgError(ErrorCode::kDuplicateEdge,
                     "vertex " + std::to_string(e.buyer) +
                         " buys the edge to " + std::to_string(e.other) +
                         " twice");
    }
    bit = 1;
    ++bought_count_[e.buyer];
  }
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (owner_bits_[Index(u, v)] || owner_bits_[Index(v, u)]) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        undirected_.push_back({u, v});
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::vector<VertexId> StrategyProfile::Strategy(VertexId v) const {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n_; ++u) {
    if (owner_bits_[Index(v, u)]) out.push_back(u);
  }
  return out;
}

int StrategyProfile::EdgeIndex(VertexId u, VertexId v) const {
  const UndirectedEdge key = UndirectedEdge::Of(u, v);
  auto it = std::lower_bound(undirected_.begin(), undirected_.end(), key);
  if (it == undirected_.end() || *it != key) return -1;
  return static_cast<int>(it - undirected_.begin());
}

StrategyProfile StrategyProfile::WithStrategy(
    VertexId v, const std::vector<VertexId>& targets) const {
  std::vector<BoughtEdge> edges;
  edges.reserve(edges_.size() + targets.size());
  for (const BoughtEdge& e : edges_) {
    if (e.buyer != v) edges.push_back(e);
  }
  for (VertexId t : targets) edges.push_back({v, t});
  return StrategyProfile(n_, alpha_, std::move(edges), max_vertices_);
}

StrategyProfile StrategyProfile::WithAlpha(Rational alpha) const {
  return StrategyProfile(n_, alpha, edges_, max_vertices_);
}

std::string StrategyProfile::CanonicalString() const {
  std::string out = std::to_string(n_) + "|" + FormatRational(alpha_) + "|";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(edges_[i].buyer) + ">" +
           std::to_string(edges_[i].other);
  }
  return out;
}

std::string StrategyProfile::Digest() const {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : CanonicalString()) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<int> BfsDistances(const StrategyProfile& profile, VertexId source,
                              std::optional<VertexId> removed_vertex,
                              std::optional<UndirectedEdge> removed_edge) {
  const int n = profile.n();
  std::vector<int> dist(n, kUnreachable);
  if (removed_vertex == source) return dist;
  std::deque<VertexId> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : profile.neighbors(u)) {
      if (dist[w] != kUnreachable || w == removed_vertex) continue;
      if (removed_edge && *removed_edge == UndirectedEdge::Of(u, w)) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

DistanceMatrix AllPairsDistances(const StrategyProfile& profile) {
  const int n = profile.n();
  std::vector<int> all;
  all.reserve(static_cast<std::size_t>(n) * n);
  for (VertexId s = 0; s < n; ++s) {
    std::vector<int> row = BfsDistances(profile, s);
    all.insert(all.end(), row.begin(), row.end());
  }
  return DistanceMatrix(n, std::move(all));
}

std::optional<std::int64_t> ConnectionCost(std::span<const int> distances) {
  std::int64_t total = 0;
  for (int d : distances) {
    if (d == kUnreachable) return std::nullopt;
    total += d;
  }
  return total;
}

std::optional<std::int64_t> ConnectionCost(const DistanceMatrix& dist,
                                           VertexId v) {
  return ConnectionCost(dist.row(v));
}

CostBreakdown VertexCost(const StrategyProfile& profile,
                         const DistanceMatrix& dist, VertexId v) {
  CostBreakdown out{v, profile.alpha() * profile.BoughtCount(v),
                    ConnectionCost(dist, v), Cost::Infinite()};
  if (out.connection) {
    out.total = Cost::Finite(out.building + Rational(*out.connection));
  }
  return out;
}

bool IsConnected(const StrategyProfile& profile) {
  std::vector<int> d = BfsDistances(profile, 0);
  return std::none_of(d.begin(), d.end(),
                      [](int x) { return x == kUnreachable; });
}

Cost SocialCost(const StrategyProfile& profile, const DistanceMatrix& dist) {
  Rational total = 0;
  for (VertexId v = 0; v < profile.n(); ++v) {
    CostBreakdown c = VertexCost(profile, dist, v);
    if (!c.total.is_finite()) return Cost::Infinite();
    total += c.total.value();
  }
  return Cost::Finite(total);
}

}  // namespace ncg
