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


#include "ncg/audit.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "ncg/error.h"

namespace ncg {

using nlohmann::json;

StrategyContext::StrategyContext(StrategyProfile profile)
    : profile_(std::move(profile)),
      view_(BuildStructuralView(profile_)),
      cycles_(BuildCycleReport(profile_, view_.dist, view_.core)) {}

int StrategyContext::EdgeSubtree(VertexId u, VertexId v) const {
  return EdgeSubtreeSize(profile_, view_.spt, u, v);
}

std::optional<int> StrategyContext::Level(VertexId u, VertexId v) const {
  const EdgeClass* c = view_.Find(u, v);
  return c ? c->level : std::nullopt;
}

bool StrategyContext::InPlus(VertexId u, VertexId v) const {
  const EdgeClass* c = view_.Find(u, v);
  return c != nullptr && c->in_plus;
}

std::optional<int> StrategyContext::SmallestCycleLength(VertexId v) const {
  auto it = cycles_.per_vertex.find(v);
  if (it == cycles_.per_vertex.end()) return std::nullopt;
  return it->second.length();
}

bool StrategyContext::AlphaAboveTwoN() const {
  return profile_.alpha() > Rational(2 * profile_.n());
}

std::string BoundStrategyName(BoundStrategy strategy) {
  switch (strategy) {
    case BoundStrategy::kSell: return "strategy1";
    case BoundStrategy::kSellBuyRoot: return "strategy2";
    case BoundStrategy::kSellPlusBuyRoot: return "strategy3";
  }
  return "unknown";
}

namespace {

Rational SoldTerm(const std::vector<SoldEdge>& sold, int factor_offset) {
  Rational total = 0;
  for (const SoldEdge& e : sold) {
    total += Rational(2 * e.level + factor_offset) * e.subtree;
  }
  return total;
}

}  // namespace

BoundInputs GatherBoundInputs(const StrategyContext& ctx, VertexId u) {
  BoundInputs in{ctx.n(), ctx.alpha(), {}};
  for (VertexId w : ctx.spt().PathToRoot(u)) {
    in.path_subtrees.push_back(ctx.SubtreeSize(w));
  }
  return in;
}

Rational Strategy1Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold) {
  const int d = in.depth();
  std::int64_t ancestors = 0;
  for (int l = 0; l < d; ++l) ancestors += 2 * in.path_subtrees[l];
  const int j = static_cast<int>(sold.size());
  return Rational(std::int64_t{d} * in.n - ancestors) - in.alpha * j +
         SoldTerm(sold, 2 * d);
}

Rational Strategy2Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold) {
  const int d = in.depth();
  std::int64_t value = in.n;
  // The midpoint term is dropped when d(u,r)/2 is not integral.
  if (d % 2 == 0) value -= in.path_subtrees[d / 2];
  for (int l = 0; 2 * l < d; ++l) value -= 2 * in.path_subtrees[l];
  const int j = static_cast<int>(sold.size());
  return Rational(value) - in.alpha * (j - 1) + SoldTerm(sold, d + 1);
}

Rational Strategy3Bound(const BoundInputs& in,
                        const std::vector<SoldEdge>& sold) {
  const int d = in.depth();
  const int j = static_cast<int>(sold.size());
  return Rational(in.n) - in.alpha * (j - 1) -
         Rational(std::int64_t{d + 1} * in.path_subtrees.front()) +
         SoldTerm(sold, d + 1);
}

Rational Strategy1Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold) {
  return Strategy1Bound(GatherBoundInputs(ctx, u), sold);
}

Rational Strategy2Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold) {
  return Strategy2Bound(GatherBoundInputs(ctx, u), sold);
}

Rational Strategy3Bound(const StrategyContext& ctx, VertexId u,
                        const std::vector<SoldEdge>& sold) {
  return Strategy3Bound(GatherBoundInputs(ctx, u), sold);
}

std::vector<SoldEdge> DescribeSale(const StrategyContext& ctx, VertexId u,
                                   const std::vector<VertexId>& targets) {
  std::vector<SoldEdge> out;
  for (VertexId t : targets) {
    SoldEdge e{t, ctx.Level(u, t).value_or(0), 0};
    if (ctx.profile().HasEdge(u, t)) e.subtree = ctx.EdgeSubtree(u, t);
    out.push_back(e);
  }
  return out;
}

Deviation BoundDeviation(const StrategyContext& ctx, VertexId u,
                         BoundStrategy strategy,
                         const std::vector<VertexId>& targets) {
  std::vector<VertexId> keep;
  for (VertexId t : ctx.profile().Strategy(u)) {
    if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
      keep.push_back(t);
    }
  }
  if (strategy != BoundStrategy::kSell) keep.push_back(ctx.root());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return {u, keep};
}

namespace {

bool Certified(const std::optional<NeCertificate>& certificate) {
  return certificate && certificate->Certifies();
}

bool AtMost(const CostChange& delta, const Rational& bound) {
  switch (delta.kind) {
    case CostChange::Kind::kFinite: return delta.value <= bound;
    case CostChange::Kind::kMinusInfinity: return true;
    default: return false;
  }
}

void Note(std::string& notes, const std::string& text) {
  if (!notes.empty()) notes += "; ";
  notes += text;
}

}  // namespace

BoundComparison AuditDeviationBound(
    const StrategyContext& ctx, VertexId u, BoundStrategy strategy,
    const std::vector<VertexId>& targets,
    const std::optional<NeCertificate>& certificate) {
  BoundComparison out;
  out.strategy = strategy;
  out.vertex = u;
  out.bought_root = strategy != BoundStrategy::kSell;
  out.sold = DescribeSale(ctx, u, targets);

  std::string notes;
  bool ok = true;
  auto require = [&](bool condition, const std::string& failure) {
    if (!condition) {
      ok = false;
      Note(notes, failure);
    }
  };
  require(ctx.HasCore(), "no biconnected component H");
  if (ctx.HasCore()) {
    require(ctx.InCore(u), "u not in H");
    require(u != ctx.root(), "u is the root");
  }
  require(ctx.AlphaAboveTwoN(), "alpha <= 2n");
  require(ctx.cycles().girth && *ctx.cycles().girth >= 7, "girth < 7");
  require(!targets.empty(), "no sold edges (j = 0)");
  for (VertexId t : targets) {
    const std::string edge = std::to_string(u) + "-" + std::to_string(t);
    if (!ctx.profile().Buys(u, t)) {
      require(false, edge + " not bought by u");
      continue;
    }
    const EdgeClass* c = ctx.view().Find(u, t);
    const bool leveled = c && c->level && *c->level <= 2;
    const bool up = c && c->orientation == Orientation::kUp;
    if (strategy == BoundStrategy::kSellPlusBuyRoot) {
      require(leveled || up, edge + " not in X_2^+");
    } else {
      require(leveled, edge + " not in X_2");
    }
  }
  if (ctx.HasCore()) {
    require(ConnectionCost(ctx.dist(), ctx.root()) <=
                ConnectionCost(ctx.dist(), u),
            "D(r) > D(u)");
  }
  out.preconditions_met = ok;
  Note(notes, ok ? "gated on alpha > 2n, girth >= 7 and D(r) <= D(u), "
                   "not on an equilibrium certificate"
                 : "bound evaluated without its preconditions");
  out.precondition_notes = notes;

  switch (strategy) {
    case BoundStrategy::kSell:
      out.bound = Strategy1Bound(ctx, u, out.sold);
      break;
    case BoundStrategy::kSellBuyRoot:
      out.bound = Strategy2Bound(ctx, u, out.sold);
      break;
    case BoundStrategy::kSellPlusBuyRoot:
      out.bound = Strategy3Bound(ctx, u, out.sold);
      break;
  }
  const Deviation deviation = BoundDeviation(ctx, u, strategy, targets);
  out.exact_delta = DeltaCost(ctx.profile(), u, deviation.new_edge_set);
  out.dominates = AtMost(out.exact_delta, out.bound);
  if (Certified(certificate)) {
    out.ne_consistent = !out.exact_delta.IsImprovement();
  }
  return out;
}

std::string LemmaName(LemmaId id) {
  switch (id) {
    case LemmaId::kMinCycleSize: return "mincyclesize";
    case LemmaId::kSevenCycle: return "seven-cycle";
    case LemmaId::kDirectedMinCycles: return "directed-mincycles";
    case LemmaId::kMaxN2: return "maxn2";
    case LemmaId::kAltPath: return "altpath";
    case LemmaId::kX2Position: return "x2position";
    case LemmaId::kDeg2: return "deg2";
    case LemmaId::kObsX1: return "obs-x1";
    case LemmaId::kObsX2: return "obs-x2";
    case LemmaId::kObsX2Depth: return "obs-x2depth";
    case LemmaId::kPathDegreeTwo: return "mainlemma1";
    case LemmaId::kRootDegree: return "mainlemma2";
    case LemmaId::kDegreeSum: return "degree-sum";
  }
  return "unknown";
}

namespace {

const std::vector<LemmaId>& AllLemmas() {
  static const std::vector<LemmaId> kAll = {
      LemmaId::kMinCycleSize, LemmaId::kSevenCycle,
      LemmaId::kDirectedMinCycles, LemmaId::kMaxN2,
      LemmaId::kAltPath, LemmaId::kX2Position,
      LemmaId::kDeg2, LemmaId::kObsX1,
      LemmaId::kObsX2, LemmaId::kObsX2Depth,
      LemmaId::kPathDegreeTwo, LemmaId::kRootDegree,
      LemmaId::kDegreeSum};
  return kAll;
}

}  // namespace

std::optional<LemmaId> ParseLemma(const std::string& name) {
  for (LemmaId id : AllLemmas()) {
    if (LemmaName(id) == name) return id;
  }
  return std::nullopt;
}

const std::vector<LemmaId>& StructuralLemmas() {
  static const std::vector<LemmaId> kStructural = [] {
    std::vector<LemmaId> out;
    for (LemmaId id : AllLemmas()) {
      if (id != LemmaId::kAltPath) out.push_back(id);
    }
    return out;
  }();
  return kStructural;
}

namespace {

json CycleJson(const std::vector<VertexId>& cycle) { return json(cycle); }

const Cycle* ShortestCycle(const StrategyContext& ctx) {
  const Cycle* best = nullptr;
  for (const auto& [edge, cycle] : ctx.cycles().per_edge) {
    if (best == nullptr || cycle.length() < best->length()) best = &cycle;
  }
  return best;
}

// Vertex set T(uv).
std::set<VertexId> EdgeSubtreeVertices(const StrategyContext& ctx, VertexId u,
                                       VertexId v) {
  std::set<VertexId> out;
  if (ctx.EdgeSubtree(u, v) == 0) return out;
  const SptAnalysis& spt = ctx.spt();
  const VertexId child = spt.parent[v] == u ? v : u;
  for (VertexId w = 0; w < ctx.n(); ++w) {
    if (spt.InSubtree(w, child)) out.insert(w);
  }
  return out;
}

std::size_t UnionSize(const std::set<VertexId>& a,
                      const std::set<VertexId>& b) {
  std::set<VertexId> both = a;
  both.insert(b.begin(), b.end());
  return both.size();
}

// Targets of u's bought edges in X_level (or X_level^+).
std::vector<VertexId> Bought(const StrategyContext& ctx, VertexId u,
                             int max_level, bool plus) {
  return SellableTargets(ctx.profile(), ctx.view(), u, max_level, plus);
}

std::string RationalText(const Rational& r) { return FormatRational(r); }

void NoCore(AuditFinding& f) {
  f.applicable = false;
  f.detail["reason"] = "no biconnected component H";
}

void SetAlphaGate(AuditFinding& f, const StrategyContext& ctx) {
  if (!ctx.AlphaAboveTwoN()) {
    f.applicable = false;
    f.detail["reason"] = "alpha <= 2n";
  }
}

AuditFinding MinCycleSize(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kMinCycleSize};
  const Cycle* smallest = ShortestCycle(ctx);
  if (smallest == nullptr) {
    f.detail["reason"] = "acyclic";
    return f;
  }
  const Rational bound = Rational(2) * ctx.alpha() / ctx.n() + 2;
  f.applicable = true;
  f.holds = Rational(smallest->length()) >= bound;
  f.detail["girth"] = smallest->length();
  f.detail["bound"] = RationalText(bound);
  if (!f.holds) f.detail["counter_witness"] = CycleJson(smallest->vertices);
  return f;
}

AuditFinding SevenCycle(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kSevenCycle};
  const Cycle* smallest = ShortestCycle(ctx);
  if (smallest == nullptr) {
    f.detail["reason"] = "acyclic";
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = smallest->length() >= 7;
  f.detail["girth"] = smallest->length();
  if (!f.holds) f.detail["counter_witness"] = CycleJson(smallest->vertices);
  return f;
}

AuditFinding DirectedMinCycles(const StrategyContext& ctx,
                               const AuditLimits& limits) {
  AuditFinding f{LemmaId::kDirectedMinCycles};
  if (!ctx.cycles().girth) {
    f.detail["reason"] = "acyclic";
    return f;
  }
  if (!(ctx.alpha() > Rational(2 * (ctx.n() - 1)))) {
    f.detail["reason"] = "alpha <= 2(n-1)";
    return f;
  }
  const MinCycleEnumeration all =
      EnumerateMinCycles(ctx.profile(), ctx.dist(), limits.max_min_cycle_nodes);
  f.detail["nodes_expanded"] = all.nodes_expanded;
  if (!all.complete) {
    f.detail["reason"] = "min-cycle enumeration budget exceeded";
    return f;
  }
  f.applicable = true;
  f.holds = true;
  f.detail["min_cycles"] = all.cycles.size();
  for (const auto& cycle : all.cycles) {
    if (!IsDirectedCycle(ctx.profile(), cycle)) {
      f.holds = false;
      f.detail["counter_witness"] = CycleJson(cycle);
      break;
    }
  }
  return f;
}

AuditFinding MaxN2(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kMaxN2};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  f.holds = true;
  for (VertexId v = 0; v < ctx.n(); ++v) {
    if (v == ctx.root()) continue;
    if (2 * ctx.SubtreeSize(v) > ctx.n()) {
      f.holds = false;
      f.detail["counter_witness"] = {{"vertex", v},
                                     {"subtree_size", ctx.SubtreeSize(v)}};
      break;
    }
  }
  return f;
}

AuditFinding AltPathAll(const StrategyContext& ctx,
                        const std::optional<NeCertificate>& certificate) {
  AuditFinding f{LemmaId::kAltPath};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  f.holds = true;
  int checked = 0;
  json failures = json::array();
  for (VertexId u : ctx.view().core.vertices) {
    for (VertexId v : Bought(ctx, u, 2, false)) {
      AuditFinding one = AuditAltPath(ctx, u, v, certificate);
      if (!one.applicable) {
        f.applicable = false;
        f.detail["reason"] = one.detail["reason"];
        return f;
      }
      ++checked;
      if (!one.holds) {
        f.holds = false;
        failures.push_back(one.detail);
      }
    }
  }
  if (checked == 0) SetAlphaGate(f, ctx);
  if (ctx.cycles().girth < 7) {
    f.applicable = false;
    f.detail["reason"] = "girth < 7";
  }
  f.detail["edges_checked"] = checked;
  if (!f.holds) f.detail["counter_witness"] = failures;
  return f;
}

AuditFinding X2Position(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kX2Position};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  int checked = 0;
  for (VertexId u : ctx.view().core.vertices) {
    const std::optional<int> cu = ctx.SmallestCycleLength(u);
    for (VertexId v : Bought(ctx, u, 2, false)) {
      const int i = *ctx.Level(u, v);
      ++checked;
      const int needed = *cu / 2 - i;
      if (ctx.Depth(u) < needed) {
        f.holds = false;
        f.detail["counter_witness"] = {{"u", u},       {"v", v},
                                       {"level", i},   {"depth", ctx.Depth(u)},
                                       {"cycle", *cu}, {"required", needed}};
      }
    }
  }
  f.detail["instances"] = checked;
  return f;
}

AuditFinding Deg2(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kDeg2};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  f.holds = true;
  const StrategyProfile& p = ctx.profile();
  const SptAnalysis& spt = ctx.spt();
  json instances = json::array();
  for (VertexId v : ctx.view().core.vertices) {
    if (ctx.CoreDegree(v) != 2) continue;
    std::vector<VertexId> ends;
    for (VertexId x : p.neighbors(v)) {
      if (ctx.view().Find(v, x) != nullptr) ends.push_back(x);
    }
    for (int flip = 0; flip < 2; ++flip) {
      const VertexId u = ends[flip];
      const VertexId w = ends[1 - flip];
      if (!p.Buys(u, v) || !p.Buys(v, w)) continue;
      const SSet all = ComputeSSet(p, ctx.dist(), ctx.view().core.vertices, v,
                                   SSetVariant::kAllPaths);
      const SSet some = ComputeSSet(p, ctx.dist(), ctx.view().core.vertices, v,
                                    SSetVariant::kSomePath);
      const int cv = *ctx.SmallestCycleLength(v);
      const int size = static_cast<int>(all.members.size());
      json item = {{"u", u},
                   {"v", v},
                   {"w", w},
                   {"cycle", cv},
                   {"s_all_paths", size},
                   {"s_some_path", some.members.size()}};
      if (cv > 3) {
        const Rational bound = ctx.alpha() / (2 * (cv - 3));
        const bool ok = Rational(size) >= bound;
        item["alpha_bound"] = RationalText(bound);
        item["alpha_branch_holds"] = ok;
        f.holds = f.holds && ok;
      } else {
        item["alpha_branch"] = "inapplicable: |C(v)| = 3";
      }
      const bool down_path = spt.parent[v] == u && spt.parent[w] == v &&
                             spt.orientation[v] == Orientation::kDown &&
                             spt.orientation[w] == Orientation::kDown;
      if (down_path) {
        const bool ok = size >= ctx.SubtreeSize(w);
        item["subtree_bound"] = ctx.SubtreeSize(w);
        item["subtree_branch_holds"] = ok;
        f.holds = f.holds && ok;
      }
      instances.push_back(item);
    }
  }
  f.detail["instances"] = instances;
  return f;
}

AuditFinding ObsX1(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kObsX1};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  for (VertexId u : ctx.view().core.vertices) {
    const std::vector<VertexId> plus = Bought(ctx, u, 1, true);
    if (plus.size() >= 2) {
      f.holds = false;
      f.detail["counter_witness"] = {{"u", u}, {"targets", plus}};
      break;
    }
  }
  return f;
}

AuditFinding ObsX2(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kObsX2};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  for (VertexId u : ctx.view().core.vertices) {
    const std::vector<VertexId> plus = Bought(ctx, u, 2, true);
    if (plus.size() >= 3) {
      f.holds = false;
      f.detail["counter_witness"] = {{"u", u}, {"three_in_x2_plus", plus}};
      return f;
    }
    for (std::size_t a = 0; a < plus.size(); ++a) {
      for (std::size_t b = a + 1; b < plus.size(); ++b) {
        const std::size_t size =
            UnionSize(EdgeSubtreeVertices(ctx, u, plus[a]),
                      EdgeSubtreeVertices(ctx, u, plus[b]));
        if (!(Rational(static_cast<std::int64_t>(size)) >
              Rational(ctx.n(), 4))) {
          f.holds = false;
          f.detail["counter_witness"] = {{"u", u},
                                         {"pair", {plus[a], plus[b]}},
                                         {"union_size", size}};
          return f;
        }
      }
    }
  }
  return f;
}

AuditFinding ObsX2Depth(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kObsX2Depth};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  int instances = 0;
  for (VertexId u : ctx.view().core.vertices) {
    const std::vector<VertexId> x2 = Bought(ctx, u, 2, false);
    for (std::size_t a = 0; a < x2.size(); ++a) {
      for (std::size_t b = a + 1; b < x2.size(); ++b) {
        ++instances;
        const int depth = ctx.Depth(u);
        const std::size_t size = UnionSize(EdgeSubtreeVertices(ctx, u, x2[a]),
                                           EdgeSubtreeVertices(ctx, u, x2[b]));
        const bool large =
            Rational(static_cast<std::int64_t>(size)) > Rational(ctx.n(), 4);
        const bool ok = depth >= 3 && (!large || depth == 3);
        if (!ok && f.holds) {
          f.holds = false;
          f.detail["counter_witness"] = {{"u", u},
                                         {"pair", {x2[a], x2[b]}},
                                         {"depth", depth},
                                         {"union_size", size}};
        }
      }
    }
  }
  f.detail["instances"] = instances;
  return f;
}

AuditFinding PathDegreeTwo(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kPathDegreeTwo};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  int instances = 0;
  for (VertexId u0 : ctx.view().core.vertices) {
    if (Bought(ctx, u0, 0, false).empty()) continue;
    ++instances;
    const std::vector<VertexId> path = ctx.spt().PathToRoot(u0);
    std::vector<VertexId> degree_two;
    for (std::size_t l = 0; l < std::min<std::size_t>(3, path.size()); ++l) {
      if (ctx.CoreDegree(path[l]) == 2) degree_two.push_back(path[l]);
    }
    if (degree_two.size() > 1 && f.holds) {
      f.holds = false;
      f.detail["counter_witness"] = {{"u0", u0}, {"degree_two", degree_two}};
    }
  }
  f.detail["instances"] = instances;
  return f;
}

AuditFinding RootDegree(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kRootDegree};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  std::vector<VertexId> buyers;
  for (VertexId v : ctx.view().core.vertices) {
    if (Bought(ctx, v, 2, false).size() >= 2) buyers.push_back(v);
  }
  const int root_degree = ctx.CoreDegree(ctx.root());
  f.holds = static_cast<int>(buyers.size()) < root_degree;
  f.detail["two_x2_buyers"] = buyers;
  f.detail["root_degree_h"] = root_degree;
  return f;
}

AuditFinding DegreeSum(const StrategyContext& ctx) {
  AuditFinding f{LemmaId::kDegreeSum};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  const BiconnectedComponent& core = ctx.view().core;
  const int n_h = static_cast<int>(core.vertices.size());
  int tree_edges = 0;
  int out_edges = 0;
  for (const EdgeClass& c : ctx.view().classes) {
    if (c.in_tree) ++tree_edges;
    if (c.level == 0) ++out_edges;
  }
  f.detail["n_h"] = n_h;
  f.detail["tree_edges_in_h"] = tree_edges;
  if (tree_edges != n_h - 1) {
    f.detail["reason"] = "H and T do not induce a spanning tree of H";
    return f;
  }
  int degree_sum = 0;
  for (VertexId v : core.vertices) degree_sum += ctx.CoreDegree(v);
  f.applicable = true;
  f.holds = degree_sum == 2 * (n_h - 1) + 2 * out_edges;
  f.detail["degree_sum"] = degree_sum;
  f.detail["x0"] = out_edges;
  return f;
}

bool PresumesEquilibrium(LemmaId id) { return id != LemmaId::kDegreeSum; }

}  // namespace

AuditFinding AuditAltPath(const StrategyContext& ctx, VertexId u, VertexId v,
                          const std::optional<NeCertificate>& certificate) {
  AuditFinding f{LemmaId::kAltPath};
  f.informational = !Certified(certificate);
  f.detail = {{"u", u}, {"v", v}};
  if (!ctx.HasCore()) {
    NoCore(f);
    return f;
  }
  const std::optional<int> level = ctx.Level(u, v);
  if (!ctx.profile().Buys(u, v) || !level || *level > 2) {
    f.detail["reason"] = "uv is not an X_2 edge bought by u";
    return f;
  }
  if (!ctx.cycles().girth || *ctx.cycles().girth < 7) {
    f.detail["reason"] = "girth < 7";
    return f;
  }
  f.applicable = true;
  SetAlphaGate(f, ctx);
  if (!f.applicable) return f;
  f.holds = true;
  f.detail["level"] = *level;
  const std::vector<int> avoiding =
      BfsDistances(ctx.profile(), ctx.root(), u);
  json margins = json::array();
  for (VertexId w : EdgeSubtreeVertices(ctx, u, v)) {
    const int allowed = ctx.Depth(w) + 2 * *level;
    const int found = avoiding[w];
    const bool ok = found != kUnreachable && found <= allowed;
    margins.push_back({{"w", w},
                       {"avoiding_u", found == kUnreachable ? json("inf")
                                                            : json(found)},
                       {"allowed", allowed}});
    f.holds = f.holds && ok;
  }
  f.detail["margins"] = margins;
  return f;
}

AuditFinding AuditStructural(const StrategyContext& ctx, LemmaId lemma,
                             const std::optional<NeCertificate>& certificate,
                             const AuditLimits& limits) {
  AuditFinding f;
  switch (lemma) {
    case LemmaId::kMinCycleSize: f = MinCycleSize(ctx); break;
    case LemmaId::kSevenCycle: f = SevenCycle(ctx); break;
    case LemmaId::kDirectedMinCycles: f = DirectedMinCycles(ctx, limits); break;
    case LemmaId::kMaxN2: f = MaxN2(ctx); break;
    case LemmaId::kAltPath: f = AltPathAll(ctx, certificate); break;
    case LemmaId::kX2Position: f = X2Position(ctx); break;
    case LemmaId::kDeg2: f = Deg2(ctx); break;
    case LemmaId::kObsX1: f = ObsX1(ctx); break;
    case LemmaId::kObsX2: f = ObsX2(ctx); break;
    case LemmaId::kObsX2Depth: f = ObsX2Depth(ctx); break;
    case LemmaId::kPathDegreeTwo: f = PathDegreeTwo(ctx); break;
    case LemmaId::kRootDegree: f = RootDegree(ctx); break;
    case LemmaId::kDegreeSum: f = DegreeSum(ctx); break;
  }
  f.informational = PresumesEquilibrium(lemma) && !Certified(certificate);
  if (!f.applicable) f.holds = false;
  if (certificate) {
    f.detail["certificate_class"] = certificate->deviation_class.Name();
  }
  return f;
}

int AuditReport::ApplicableCount() const {
  return static_cast<int>(std::count_if(
      findings.begin(), findings.end(),
      [](const AuditFinding& f) { return f.applicable; }));
}

int AuditReport::HoldsCount() const {
  return static_cast<int>(
      std::count_if(findings.begin(), findings.end(),
                    [](const AuditFinding& f) { return f.applicable && f.holds; }));
}

int AuditReport::FailureCount() const {
  int failures = static_cast<int>(std::count_if(
      findings.begin(), findings.end(),
      [](const AuditFinding& f) { return f.IsFailure(); }));
  failures += static_cast<int>(
      std::count_if(bounds.begin(), bounds.end(),
                    [](const BoundComparison& b) { return b.IsViolation(); }));
  return failures;
}

AuditReport AuditFull(const StrategyContext& ctx,
                      const std::optional<NeCertificate>& certificate,
                      const AuditLimits& limits) {
  AuditReport report;
  for (LemmaId id : AllLemmas()) {
    report.findings.push_back(AuditStructural(ctx, id, certificate, limits));
  }
  if (!ctx.HasCore()) return report;
  for (BoundStrategy strategy :
       {BoundStrategy::kSell, BoundStrategy::kSellBuyRoot,
        BoundStrategy::kSellPlusBuyRoot}) {
    const bool plus = strategy == BoundStrategy::kSellPlusBuyRoot;
    for (VertexId u : ctx.view().core.vertices) {
      if (u == ctx.root()) continue;
      const std::vector<VertexId> pool = Bought(ctx, u, 2, plus);
      if (pool.empty()) continue;
      const int m = static_cast<int>(pool.size());
      const std::int64_t subsets =
          m >= 62 ? std::numeric_limits<std::int64_t>::max()
                  : (std::int64_t{1} << m) - 1;
      const std::int64_t examined =
          std::min(subsets, limits.max_selections_per_vertex);
      if (examined < subsets) {
        report.truncated.push_back(BoundStrategyName(strategy) +
                                   ":u=" + std::to_string(u));
      }
      for (std::int64_t mask = 1; mask <= examined; ++mask) {
        std::vector<VertexId> targets;
        for (int i = 0; i < m; ++i) {
          if ((mask >> i) & 1) targets.push_back(pool[i]);
        }
        report.bounds.push_back(
            AuditDeviationBound(ctx, u, strategy, targets, certificate));
      }
    }
  }
  return report;
}

StrategyProfile GirthSevenScaffold(std::uint64_t seed,
                                   const ScaffoldOptions& options) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const int ring = pick(options.ring_min, options.ring_max);
  int n = ring;
  std::vector<UndirectedEdge> edges;
  for (int i = 0; i < ring; ++i) {
    edges.push_back(UndirectedEdge::Of(i, (i + 1) % ring));
  }
  auto as_profile = [](int count, const std::vector<UndirectedEdge>& list) {
    std::vector<BoughtEdge> bought;
    for (const UndirectedEdge& e : list) bought.push_back({e.first, e.second});
    return StrategyProfile(count, 1, std::move(bought));
  };

  const int chords = pick(0, options.max_chords);
  for (int c = 0; c < chords; ++c) {
    const int length = pick(1, options.max_chord_length);
    if (n + length - 1 > options.max_vertices) break;
    const VertexId a = pick(0, n - 1);
    const VertexId b = pick(0, n - 1);
    if (a == b) continue;
    std::vector<UndirectedEdge> trial = edges;
    VertexId prev = a;
    for (int step = 1; step < length; ++step) {
      trial.push_back(UndirectedEdge::Of(prev, n + step - 1));
      prev = n + step - 1;
    }
    const UndirectedEdge last = UndirectedEdge::Of(prev, b);
    if (std::find(trial.begin(), trial.end(), last) != trial.end()) continue;
    trial.push_back(last);
    const int trial_n = n + length - 1;
    std::optional<int> girth = Girth(as_profile(trial_n, trial));
    if (girth && *girth >= 7) {
      edges = std::move(trial);
      n = trial_n;
    }
  }
  const int hanging =
      pick(0, std::max(0, std::min(options.max_tree_vertices,
                                   options.max_vertices - n)));
  for (int t = 0; t < hanging; ++t) {
    edges.push_back(UndirectedEdge::Of(pick(0, n - 1), n));
    ++n;
  }

  std::vector<VertexId> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(relabel[i], relabel[pick(0, i)]);
  std::vector<BoughtEdge> bought;
  for (const UndirectedEdge& e : edges) {
    const VertexId a = relabel[e.first];
    const VertexId b = relabel[e.second];
    if (rng() & 1) {
      bought.push_back({a, b});
    } else {
      bought.push_back({b, a});
    }
  }
  return StrategyProfile(n, Rational(2 * n + 1), std::move(bought));
}

namespace {

json DeltaJson(const CostChange& c) {
  if (c.IsFinite()) return FormatRational(c.value);
  return c.ToString();
}

}  // namespace

json ToJson(const AuditFinding& finding) {
  json out = {{"lemma", LemmaName(finding.lemma)},
              {"applicable", finding.applicable},
              {"informational", finding.informational},
              {"detail", finding.detail}};
  if (finding.applicable) out["holds"] = finding.holds;
  return out;
}

json ToJson(const BoundComparison& c) {
  json sold = json::array();
  for (const SoldEdge& e : c.sold) {
    sold.push_back(
        {{"target", e.target}, {"level", e.level}, {"subtree", e.subtree}});
  }
  json out = {{"strategy", BoundStrategyName(c.strategy)},
              {"vertex", c.vertex},
              {"sold", sold},
              {"bought_root", c.bought_root},
              {"bound", FormatRational(c.bound)},
              {"exact_delta", DeltaJson(c.exact_delta)},
              {"preconditions_met", c.preconditions_met},
              {"precondition_notes", c.precondition_notes},
              {"dominates", c.dominates}};
  if (c.ne_consistent) out["ne_consistent"] = *c.ne_consistent;
  return out;
}

}  // namespace ncg
