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


#include "ncg/equilibrium.h"

#include <algorithm>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "ncg/error.h"
#include "ncg/structure.h"

namespace ncg {

DeviationClass DeviationClass::KSubset(int k) {
  if (k < 1) {
    throw NcgError(ErrorCode::kInvalidArgument, "k-subset requires k >= 1");
  }
  return {DeviationKind::kKSubset, k, {}};
}

DeviationClass DeviationClass::Composite(std::vector<DeviationClass> parts) {
  if (parts.empty()) {
    throw NcgError(ErrorCode::kInvalidArgument, "empty composite class");
  }
  return {DeviationKind::kComposite, 0, std::move(parts)};
}

std::string DeviationClass::Name() const {
  switch (kind) {
    case DeviationKind::kExactAllSubsets: return "exact";
    case DeviationKind::kSingleAdd: return "add";
    case DeviationKind::kSingleDelete: return "delete";
    case DeviationKind::kSingleSwap: return "swap";
    case DeviationKind::kKSubset: return "k-subset:" + std::to_string(k);
    case DeviationKind::kBoundStrategy1: return "strategy1";
    case DeviationKind::kBoundStrategy2: return "strategy2";
    case DeviationKind::kBoundStrategy3: return "strategy3";
    case DeviationKind::kComposite: {
      std::string out;
      for (const DeviationClass& p : parts) {
        if (!out.empty()) out += "+";
        out += p.Name();
      }
      return out;
    }
  }
  return "unknown";
}

DeviationClass DeviationClass::Parse(const std::string& text) {
  if (text.find('+') != std::string::npos) {
    std::vector<DeviationClass> parts;
    std::stringstream in(text);
    std::string piece;
    while (std::getline(in, piece, '+')) parts.push_back(Parse(piece));
    return Composite(std::move(parts));
  }
  if (text == "exact") return Exact();
  if (text == "add") return Of(DeviationKind::kSingleAdd);
  if (text == "delete") return Of(DeviationKind::kSingleDelete);
  if (text == "swap") return Of(DeviationKind::kSingleSwap);
  if (text == "strategy1") return Of(DeviationKind::kBoundStrategy1);
  if (text == "strategy2") return Of(DeviationKind::kBoundStrategy2);
  if (text == "strategy3") return Of(DeviationKind::kBoundStrategy3);
  const std::string prefix = "k-subset:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      int k = std::stoi(text.substr(prefix.size()), &used);
      if (used == text.size() - prefix.size()) return KSubset(k);
    } catch (const std::logic_error&) {
    }
  }
  throw NcgError(ErrorCode::kInvalidArgument,
                 "unknown deviation class '" + text + "'");
}

namespace {

std::vector<VertexId> NormalizeTargets(const StrategyProfile& profile,
                                       VertexId v,
                                       std::vector<VertexId> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (VertexId t : targets) {
    if (t == v) {
      throw NcgError(ErrorCode::kSelfLoop,
                     "vertex " + std::to_string(v) + " cannot buy a self-loop");
    }
    if (t < 0 || t >= profile.n()) {
      throw NcgError(ErrorCode::kVertexOutOfRange,
                     "target " + std::to_string(t) + " out of range");
    }
  }
  return targets;
}

std::vector<VertexId> Others(int n, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n; ++u) {
    if (u != v) out.push_back(u);
  }
  return out;
}

void CheckBudget(std::int64_t needed, const EngineLimits& limits,
                 const std::string& what) {
  if (needed > limits.max_deviations_per_vertex) {
    throw NcgError(ErrorCode::kBudgetExceeded,
                   what + " needs " + std::to_string(needed) +
                       " deviations per vertex; budget is " +
                       std::to_string(limits.max_deviations_per_vertex));
  }
}

std::int64_t SubsetCount(int elements) {
  if (elements >= 62) return std::numeric_limits<std::int64_t>::max();
  return std::int64_t{1} << elements;
}

std::int64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<VertexId> SymmetricFlip(const std::vector<VertexId>& current,
                                    const std::vector<VertexId>& flips) {
  std::vector<VertexId> out;
  std::set_symmetric_difference(current.begin(), current.end(), flips.begin(),
                                flips.end(), std::back_inserter(out));
  return out;
}

// Visits all k-element subsets of `pool` in lexicographic order.
bool ForEachCombination(const std::vector<VertexId>& pool, int k,
                        const std::function<bool(std::vector<VertexId>&)>& f) {
  const int m = static_cast<int>(pool.size());
  if (k > m) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<VertexId> chosen(k);
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    if (!f(chosen)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool VisitBoundStrategy(const StrategyProfile& profile, VertexId v,
                        DeviationKind kind, const EngineLimits& limits,
                        const std::function<bool(const Deviation&)>& visit) {
  if (!IsConnected(profile)) return true;
  const StructuralView view = BuildStructuralView(profile);
  if (!view.HasCore() || !view.in_core[v] || v == view.root()) return true;
  const bool plus = kind == DeviationKind::kBoundStrategy3;
  const bool buy_root = kind != DeviationKind::kBoundStrategy1;
  const std::vector<VertexId> sellable =
      SellableTargets(profile, view, v, 2, plus);
  const int m = static_cast<int>(sellable.size());
  CheckBudget(SubsetCount(m) - 1, limits, "bound strategy");
  const std::vector<VertexId> current = profile.Strategy(v);
  for (std::int64_t mask = 1; mask < SubsetCount(m); ++mask) {
    std::vector<VertexId> keep;
    for (VertexId t : current) {
      auto pos = std::find(sellable.begin(), sellable.end(), t);
      const bool sold = pos != sellable.end() &&
                        ((mask >> (pos - sellable.begin())) & 1);
      if (!sold) keep.push_back(t);
    }
    if (buy_root && !std::binary_search(keep.begin(), keep.end(),
                                        view.root())) {
      keep.insert(std::upper_bound(keep.begin(), keep.end(), view.root()),
                  view.root());
    }
    if (!visit(Deviation{v, std::move(keep)})) return false;
  }
  return true;
}

bool VisitClass(const StrategyProfile& profile, VertexId v,
                const DeviationClass& cls, const EngineLimits& limits,
                const std::function<bool(const Deviation&)>& visit) {
  const int n = profile.n();
  const std::vector<VertexId> current = profile.Strategy(v);
  std::vector<VertexId> absent;
  for (VertexId u : Others(n, v)) {
    if (!std::binary_search(current.begin(), current.end(), u)) {
      absent.push_back(u);
    }
  }
  switch (cls.kind) {
    case DeviationKind::kExactAllSubsets: {
      const std::vector<VertexId> others = Others(n, v);
      const int m = static_cast<int>(others.size());
      CheckBudget(SubsetCount(m), limits, "exact class");
      for (std::int64_t mask = 0; mask < SubsetCount(m); ++mask) {
        std::vector<VertexId> set;
        for (int i = 0; i < m; ++i) {
          if ((mask >> i) & 1) set.push_back(others[i]);
        }
        if (!visit(Deviation{v, std::move(set)})) return false;
      }
      return true;
    }
    case DeviationKind::kSingleAdd:
      for (VertexId x : absent) {
        std::vector<VertexId> set = current;
        set.insert(std::upper_bound(set.begin(), set.end(), x), x);
        if (!visit(Deviation{v, std::move(set)})) return false;
      }
      return true;
    case DeviationKind::kSingleDelete:
      for (VertexId x : current) {
        std::vector<VertexId> set;
        for (VertexId t : current) {
          if (t != x) set.push_back(t);
        }
        if (!visit(Deviation{v, std::move(set)})) return false;
      }
      return true;
    case DeviationKind::kSingleSwap:
      for (VertexId x : current) {
        for (VertexId y : absent) {
          if (!visit(Deviation{v, SymmetricFlip(current, {std::min(x, y),
                                                          std::max(x, y)})})) {
            return false;
          }
        }
      }
      return true;
    case DeviationKind::kKSubset: {
      const std::vector<VertexId> others = Others(n, v);
      const int m = static_cast<int>(others.size());
      std::int64_t needed = 0;
      for (int i = 1; i <= std::min(cls.k, m); ++i) needed += Binomial(m, i);
      CheckBudget(needed, limits, "k-subset class");
      for (int size = 1; size <= std::min(cls.k, m); ++size) {
        bool go = ForEachCombination(others, size, [&](auto& flips) {
          return visit(Deviation{v, SymmetricFlip(current, flips)});
        });
        if (!go) return false;
      }
      return true;
    }
    case DeviationKind::kBoundStrategy1:
    case DeviationKind::kBoundStrategy2:
    case DeviationKind::kBoundStrategy3:
      return VisitBoundStrategy(profile, v, cls.kind, limits, visit);
    case DeviationKind::kComposite:
      for (const DeviationClass& part : cls.parts) {
        if (!VisitClass(profile, v, part, limits, visit)) return false;
      }
      return true;
  }
  return true;
}

Cost CostFromDistances(const StrategyProfile& profile, VertexId v,
                       int bought) {
  std::optional<std::int64_t> d =
      ConnectionCost(BfsDistances(profile, v));
  if (!d) return Cost::Infinite();
  return Cost::Finite(profile.alpha() * bought + Rational(*d));
}

}  // namespace

Cost AgentCost(const StrategyProfile& profile, VertexId v) {
  return CostFromDistances(profile, v, profile.BoughtCount(v));
}

CostChange DeltaCost(const StrategyProfile& profile, VertexId v,
                     const std::vector<VertexId>& new_edge_set) {
  if (v < 0 || v >= profile.n()) {
    throw NcgError(ErrorCode::kVertexOutOfRange,
                   "vertex " + std::to_string(v) + " out of range");
  }
  const std::vector<VertexId> targets =
      NormalizeTargets(profile, v, new_edge_set);
  const StrategyProfile next = profile.WithStrategy(v, targets);
  return CostChange::Between(AgentCost(profile, v), AgentCost(next, v));
}

void ForEachDeviation(const StrategyProfile& profile, VertexId v,
                      const DeviationClass& cls, const EngineLimits& limits,
                      const std::function<bool(const Deviation&)>& visit) {
  VisitClass(profile, v, cls, limits, visit);
}

BestResponse BestResponseExact(const StrategyProfile& profile, VertexId v,
                               const EngineLimits& limits) {
  const Cost before = AgentCost(profile, v);
  std::optional<std::vector<VertexId>> best_set;
  Cost best_cost = Cost::Infinite();
  ForEachDeviation(profile, v, DeviationClass::Exact(), limits,
                   [&](const Deviation& d) {
                     const Cost cost =
                         AgentCost(profile.WithStrategy(v, d.new_edge_set), v);
                     const bool better =
                         !best_set || cost < best_cost ||
                         (cost == best_cost &&
                          std::pair(d.new_edge_set.size(), d.new_edge_set) <
                              std::pair(best_set->size(), *best_set));
                     if (better) {
                       best_set = d.new_edge_set;
                       best_cost = cost;
                     }
                     return true;
                   });
  return {*best_set, CostChange::Between(before, best_cost)};
}

VerificationReport VerifyEquilibrium(const StrategyProfile& profile,
                                     const DeviationClass& cls,
                                     const EngineLimits& limits) {
  VerificationReport report;
  report.profile_hash = profile.Digest();
  report.deviation_class = cls;
  const bool connected = IsConnected(profile);
  for (VertexId v = 0; v < profile.n() && !report.witness; ++v) {
    const std::vector<VertexId> current = profile.Strategy(v);
    ForEachDeviation(profile, v, cls, limits, [&](const Deviation& d) {
      if (d.new_edge_set == current) return true;
      ++report.deviations_checked;
      CostChange delta = DeltaCost(profile, v, d.new_edge_set);
      if (delta.IsImprovement()) {
        report.witness = Witness{d, delta};
        return false;
      }
      return true;
    });
  }
  if (report.witness) {
    report.is_equilibrium = false;
  } else if (connected) {
    report.is_equilibrium = true;
  } else {
    report.verifiable = false;
  }
  return report;
}

std::optional<Witness> BestImprovingDeviation(const StrategyProfile& profile,
                                              VertexId v,
                                              const DeviationClass& cls,
                                              const EngineLimits& limits) {
  std::optional<Witness> best;
  const std::vector<VertexId> current = profile.Strategy(v);
  ForEachDeviation(profile, v, cls, limits, [&](const Deviation& d) {
    if (d.new_edge_set == current) return true;
    CostChange delta = DeltaCost(profile, v, d.new_edge_set);
    if (delta.IsImprovement() && (!best || delta < best->delta)) {
      best = Witness{d, delta};
    }
    return true;
  });
  return best;
}

DynamicsTrace BestResponseDynamics(const StrategyProfile& initial,
                                   const DeviationClass& cls,
                                   VertexOrder order, int max_iters,
                                   std::uint64_t seed,
                                   const EngineLimits& limits) {
  if (max_iters < 1) {
    throw NcgError(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  }
  DynamicsTrace trace{{}, false, initial};
  std::mt19937_64 rng(seed);
  std::vector<VertexId> sequence(initial.n());
  for (VertexId v = 0; v < initial.n(); ++v) sequence[v] = v;
  while (true) {
    if (order == VertexOrder::kRandom) {
      for (int i = initial.n() - 1; i > 0; --i) {
        std::swap(sequence[i], sequence[rng() % (i + 1)]);
      }
    }
    bool improved = false;
    for (VertexId v : sequence) {
      std::optional<Witness> move =
          BestImprovingDeviation(trace.final_profile, v, cls, limits);
      if (!move) continue;
      trace.final_profile =
          trace.final_profile.WithStrategy(v, move->deviation.new_edge_set);
      trace.steps.push_back({v, move->deviation, move->delta});
      improved = true;
      if (static_cast<int>(trace.steps.size()) >= max_iters) return trace;
    }
    if (!improved) {
      trace.converged = true;
      return trace;
    }
  }
}

std::int64_t ProfileSpaceSize(int n) {
  std::int64_t total = 1;
  for (int i = 0; i < PairCount(n); ++i) {
    if (total > std::numeric_limits<std::int64_t>::max() / 3) {
      throw NcgError(ErrorCode::kBudgetExceeded, "profile space overflows");
    }
    total *= 3;
  }
  return total;
}

StrategyProfile ProfileFromIndex(int n, const Rational& alpha,
                                 std::int64_t index) {
  std::vector<BoughtEdge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const int digit = static_cast<int>(index % 3);
      index /= 3;
      if (digit == 1) edges.push_back({u, v});
      if (digit == 2) edges.push_back({v, u});
    }
  }
  return StrategyProfile(n, alpha, std::move(edges));
}

EnumerationResult EnumerateEquilibria(int n, const Rational& alpha,
                                      const DeviationClass& cls,
                                      const EngineLimits& limits, int jobs) {
  if (n < 1 || n > limits.max_enumeration_n) {
    throw NcgError(ErrorCode::kBudgetExceeded,
                   "enumeration at n = " + std::to_string(n) +
                       " exceeds the cap of " +
                       std::to_string(limits.max_enumeration_n));
  }
  const std::int64_t total = ProfileSpaceSize(n);
  jobs = std::max(1, jobs);
  std::vector<EnumerationResult> shards(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](int shard) {
    try {
      EnumerationResult& out = shards[shard];
      const std::int64_t begin = total * shard / jobs;
      const std::int64_t end = total * (shard + 1) / jobs;
      for (std::int64_t i = begin; i < end; ++i) {
        ++out.profiles_scanned;
        StrategyProfile profile = ProfileFromIndex(n, alpha, i);
        if (!IsConnected(profile)) continue;
        ++out.connected_profiles;
        VerificationReport report = VerifyEquilibrium(profile, cls, limits);
        if (report.is_equilibrium) {
          out.equilibria.push_back({i, std::move(profile), std::move(report)});
        }
      }
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  EnumerationResult merged;
  for (EnumerationResult& s : shards) {
    merged.profiles_scanned += s.profiles_scanned;
    merged.connected_profiles += s.connected_profiles;
    for (auto& eq : s.equilibria) merged.equilibria.push_back(std::move(eq));
  }
  return merged;
}

StrategyProfile RandomProfile(int n, double edge_density, std::uint64_t seed,
                              const Rational& alpha, bool require_connected,
                              int max_attempts) {
  if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
    throw NcgError(ErrorCode::kInvalidArgument,
                   "edge density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int attempt = 1;; ++attempt) {
    std::vector<BoughtEdge> edges;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (!(uniform() < edge_density)) continue;
        if (rng() & 1) {
          edges.push_back({v, u});
        } else {
          edges.push_back({u, v});
        }
      }
    }
    StrategyProfile profile(n, alpha, std::move(edges));
    if (!require_connected || attempt >= max_attempts ||
        IsConnected(profile)) {
      return profile;
    }
  }
}

}  // namespace ncg
