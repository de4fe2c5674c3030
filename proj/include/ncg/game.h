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


#ifndef NCG_GAME_H_
#define NCG_GAME_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncg/rational.h"

namespace ncg {

using VertexId = int;

inline constexpr int kDefaultMaxVertices = 64;

struct BoughtEdge {
  VertexId buyer;
  VertexId other;

  friend auto operator<=>(const BoughtEdge&, const BoughtEdge&) = default;
};

// Unordered endpoint pair, always stored with first < second.
struct UndirectedEdge {
  VertexId first;
  VertexId second;

  static UndirectedEdge Of(VertexId a, VertexId b) {
    return a < b ? UndirectedEdge{a, b} : UndirectedEdge{b, a};
  }
  bool Touches(VertexId v) const { return v == first || v == second; }
  VertexId Opposite(VertexId v) const { return v == first ? second : first; }

  friend auto operator<=>(const UndirectedEdge&,
                          const UndirectedEdge&) = default;
};

// A strategy profile of the network creation game: n agents, the edge
// price alpha, and the list of edges each agent pays for. Immutable once
// constructed. Both (u buys uv) and (v buys vu) may be present; the
// underlying graph then has a single uv edge that is paid for twice.
class StrategyProfile {
 public:
  // Validates ids, self-loops and duplicates; throws NcgError. Bought
  // edges are stored sorted by (buyer, other).
  StrategyProfile(int n, Rational alpha, std::vector<BoughtEdge> edges,
                  int max_vertices = kDefaultMaxVertices);

  int n() const { return n_; }
  const Rational& alpha() const { return alpha_; }
  std::span<const BoughtEdge> bought_edges() const { return edges_; }

  // Sorted, deduplicated neighbours in the underlying undirected graph.
  std::span<const VertexId> neighbors(VertexId v) const {
    return adjacency_[v];
  }
  int degree(VertexId v) const {
    return static_cast<int>(adjacency_[v].size());
  }
  bool HasEdge(VertexId u, VertexId v) const {
    return owner_bits_[Index(u, v)] != 0 || owner_bits_[Index(v, u)] != 0;
  }
  // True iff `buyer` pays for the edge to `other`.
  bool Buys(VertexId buyer, VertexId other) const {
    return owner_bits_[Index(buyer, other)] != 0;
  }
  int BoughtCount(VertexId v) const { return bought_count_[v]; }
  // Sorted list of vertices v buys an edge to.
  std::vector<VertexId> Strategy(VertexId v) const;

  std::span<const UndirectedEdge> undirected_edges() const {
    return undirected_;
  }
  int num_undirected_edges() const {
    return static_cast<int>(undirected_.size());
  }
  // Position of uv in undirected_edges(); -1 when absent.
  int EdgeIndex(VertexId u, VertexId v) const;

  // Copy of this profile where v's strategy is replaced by `targets`.
  StrategyProfile WithStrategy(VertexId v,
                               const std::vector<VertexId>& targets) const;
  StrategyProfile WithAlpha(Rational alpha) const;

  int max_vertices() const { return max_vertices_; }

  // "n|alpha|b>o,b>o,...": the canonical form hashed into reports.
  std::string CanonicalString() const;
  // FNV-1a 64 of CanonicalString(), as 16 hex digits.
  std::string Digest() const;

  friend bool operator==(const StrategyProfile& a, const StrategyProfile& b) {
    return a.n_ == b.n_ && a.alpha_ == b.alpha_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t Index(VertexId u, VertexId v) const {
    return static_cast<std::size_t>(u) * n_ + v;
  }

  int n_;
  Rational alpha_;
  int max_vertices_;
  std::vector<BoughtEdge> edges_;
  std::vector<std::uint8_t> owner_bits_;
  std::vector<int> bought_count_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<UndirectedEdge> undirected_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// All-pairs unweighted distances; kUnreachable marks different components.
class DistanceMatrix {
 public:
  DistanceMatrix(int n, std::vector<int> dist)
      : n_(n), dist_(std::move(dist)) {}

  int n() const { return n_; }
  int operator()(VertexId u, VertexId v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::span<const int> row(VertexId v) const {
    return std::span<const int>(dist_).subspan(
        static_cast<std::size_t>(v) * n_, n_);
  }
  bool IsFinite(VertexId u, VertexId v) const {
    return (*this)(u, v) != kUnreachable;
  }

 private:
  int n_;
  std::vector<int> dist_;
};

// BFS distances from `source`. `removed_vertex` (if any) is deleted from
// the graph; `removed_edge` likewise.
std::vector<int> BfsDistances(const StrategyProfile& profile, VertexId source,
                              std::optional<VertexId> removed_vertex = {},
                              std::optional<UndirectedEdge> removed_edge = {});

DistanceMatrix AllPairsDistances(const StrategyProfile& profile);

// D(v): sum of distances from v; nullopt when some vertex is unreachable.
std::optional<std::int64_t> ConnectionCost(const DistanceMatrix& dist,
                                           VertexId v);
std::optional<std::int64_t> ConnectionCost(std::span<const int> distances);

struct CostBreakdown {
  VertexId vertex;
  Rational building;
  std::optional<std::int64_t> connection;
  Cost total;
};

CostBreakdown VertexCost(const StrategyProfile& profile,
                         const DistanceMatrix& dist, VertexId v);

bool IsConnected(const StrategyProfile& profile);

// Sum of all agents' costs.
Cost SocialCost(const StrategyProfile& profile, const DistanceMatrix& dist);

}  // namespace ncg

#endif  // NCG_GAME_H_
