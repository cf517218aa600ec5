#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/claw_free.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/network.hpp"
#include "clawbreak/rng.hpp"

namespace clawbreak {

/// A one-slot schedule: pairwise nonadjacent vertices and their total weight.
struct IndependentSet {
  std::vector<int> members;  // ascending
  double weight = 0.0;
};

inline bool verify_independent(const ConflictGraph& g, const IndependentSet& s) {
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    for (std::size_t j = i + 1; j < s.members.size(); ++j) {
      if (g.adjacent(s.members[i], s.members[j])) return false;
    }
  }
  double w = 0.0;
  for (int v : s.members) w += g.weight(v);
  return std::abs(w - s.weight) <= 1e-9 * std::max(1.0, std::abs(w));
}

/// Scans the order once, keeping every vertex not adjacent to one already
/// kept. The result is maximal with respect to inclusion.
inline IndependentSet maximal_is_ordered(const ConflictGraph& g, const std::vector<int>& order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n) throw InvalidPermutation("order size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw InvalidPermutation("order is not a permutation of the vertices");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  IndependentSet out;
  for (int v : order) {
    bool blocked = false;
    for (int s : out.members) {
      if (g.adjacent(v, s)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      out.members.push_back(v);
      out.weight += g.weight(v);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

/// Maximal set from the weight-descending order (ties by index).
inline IndependentSet greedy_maximal_is(const ConflictGraph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.weight(a) > g.weight(b); });
  return maximal_is_ordered(g, order);
}

struct WeightEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate of S_I, the expected maximal-IS weight over uniformly
/// random vertex orders.
inline WeightEstimate expected_maximal_is(const ConflictGraph& g, int trials, std::uint64_t seed) {
  if (trials < 1) throw SpecViolation("expected_maximal_is requires trials >= 1");
  Rng rng(seed);
  std::vector<int> order(static_cast<std::size_t>(g.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    rng.shuffle(order);
    const double w = maximal_is_ordered(g, order).weight;
    sum += w;
    sum_sq += w * w;
  }
  WeightEstimate est;
  est.mean = sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1));
    est.std_error = std::sqrt(var / trials);
  }
  return est;
}

struct MwisOptions {
  long long node_budget = 100'000'000;
};

namespace detail {

struct MwisSearch {
  const ConflictGraph& g;
  const std::vector<std::vector<int>>& groups;  // per sender, weight-descending
  std::vector<double> suffix_max;               // suffix sums of per-group max weight
  long long* budget;
  double best_weight = 0.0;
  std::vector<int> best_set;
  std::vector<int> chosen;

  void run() {
    dfs(0, 0.0, Bits(static_cast<std::size_t>(g.num_vertices())));
  }

  void dfs(std::size_t k, double cur, const Bits& blocked) {
    if (--*budget < 0) throw BudgetExceeded(0);
    if (k == groups.size()) {
      if (cur > best_weight) {
        best_weight = cur;
        best_set = chosen;
      }
      return;
    }
    if (cur + suffix_max[k] <= best_weight) return;  // remaining weight cannot help
    for (int v : groups[k]) {
      if (blocked.test(static_cast<std::size_t>(v))) continue;
      if (cur + g.weight(v) + suffix_max[k + 1] <= best_weight) break;  // weight-sorted
      Bits next = blocked;
      g.row(v).for_each([&](std::size_t u) { next.set(u); });
      chosen.push_back(v);
      dfs(k + 1, cur + g.weight(v), next);
      chosen.pop_back();
    }
    dfs(k + 1, cur, blocked);  // skip this sender entirely
  }
};

inline IndependentSet mwis_component(const ConflictGraph& g, long long* budget) {
  // one branching level per sender: same-sender transmissions are a clique
  std::map<int, std::vector<int>> by_sender;
  for (int v = 0; v < g.num_vertices(); ++v) by_sender[g.vertex(v).sender].push_back(v);
  std::vector<std::vector<int>> groups;
  groups.reserve(by_sender.size());
  for (auto& [sender, members] : by_sender) {
    std::stable_sort(members.begin(), members.end(),
                     [&](int a, int b) { return g.weight(a) > g.weight(b); });
    groups.push_back(std::move(members));
  }
  std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    return g.weight(a.front()) > g.weight(b.front());
  });

  MwisSearch search{g, groups, {}, budget, 0.0, {}, {}};
  search.suffix_max.assign(groups.size() + 1, 0.0);
  for (std::size_t k = groups.size(); k-- > 0;) {
    search.suffix_max[k] = search.suffix_max[k + 1] + g.weight(groups[k].front());
  }
  const IndependentSet greedy = greedy_maximal_is(g);
  search.best_weight = greedy.weight;
  search.best_set = greedy.members;
  search.run();

  IndependentSet out;
  out.members = search.best_set;
  std::sort(out.members.begin(), out.members.end());
  out.weight = g.total_weight(out.members);
  return out;
}

}  // namespace detail

/// Maximum-weight independent set by branch and bound: connected components
/// are solved separately; within one, the search branches per sender group
/// (one of that sender's transmissions or none), expanding heavier choices
/// first and pruning on the remaining per-group weight bound. Throws
/// BudgetExceeded once the node budget is spent.
inline IndependentSet exact_mwis(const ConflictGraph& g, const MwisOptions& options = {}) {
  long long budget = options.node_budget;
  IndependentSet out;
  try {
    for (const std::vector<int>& comp : connected_components(g)) {
      auto [sub, back] = induced_subgraph(g, comp);
      const IndependentSet s = detail::mwis_component(sub, &budget);
      for (int v : s.members) out.members.push_back(back[static_cast<std::size_t>(v)]);
    }
  } catch (const BudgetExceeded&) {
    throw BudgetExceeded(options.node_budget);
  }
  std::sort(out.members.begin(), out.members.end());
  out.weight = g.total_weight(out.members);
  return out;
}

/// Claw-breaking schedule: make the graph claw-free on a copy, solve MWIS
/// there, and read the result against the original graph. Edges were only
/// added, so the set stays independent; its weight is unchanged.
inline IndependentSet claw_broken_schedule(const ConflictGraph& g, std::uint64_t seed,
                                           const MwisOptions& options = {}) {
  const ClawFreeResult cf = make_claw_free(g, seed);
  IndependentSet s = exact_mwis(cf.graph, options);
  s.weight = g.total_weight(s.members);
  return s;
}

/// Transceivers split into the claw zone and its complement.
struct Partition {
  std::vector<int> t1;  // ascending
  std::vector<int> t2;
};

/// t1 = every transceiver appearing as sender or receiver of a transmission
/// that belongs to some claw.
inline Partition derive_claw_partition(const ConflictGraph& g, const Network& net) {
  std::set<int> hot;
  for (const Claw& claw : list_claws(g)) {
    for (int v : {claw.center, claw.leaves[0], claw.leaves[1], claw.leaves[2]}) {
      const Transmission& t = g.vertex(v);
      hot.insert(t.sender);
      for (int r : t.receivers) hot.insert(r);
    }
  }
  Partition p;
  for (const Transceiver& t : net.transceivers()) {
    (hot.count(t.id) ? p.t1 : p.t2).push_back(t.id);
  }
  return p;
}

struct MixedOptions {
  MwisOptions mwis;
  bool augment_to_maximal = false;  // off per the pseudo-code
  std::function<IndependentSet(const ConflictGraph&)> approximate_solver;  // default greedy
};

/// Mixed scheduling: transmissions touching the claw zone go to G1 and are
/// scheduled greedily; the rest form G2, solved exactly; conflicts across the
/// union are cleaned up by deleting the lighter member of each adjacent pair
/// (ties remove the larger index), scanning pairs in canonical order.
inline IndependentSet mixed_schedule(const ConflictGraph& g, const Network& net,
                                     const Partition& p, std::uint64_t /*seed*/,
                                     const MixedOptions& options = {}) {
  std::set<int> zone(p.t1.begin(), p.t1.end());
  std::set<int> rest(p.t2.begin(), p.t2.end());
  if (zone.size() + rest.size() != static_cast<std::size_t>(net.size())) {
    throw SpecViolation("partition does not cover the network");
  }
  for (int id : p.t1) {
    if (!net.has(id) || rest.count(id)) throw SpecViolation("partition is not disjoint");
  }
  std::vector<int> v1, v2;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const Transmission& t = g.vertex(v);
    bool in_zone = zone.count(t.sender) != 0;
    for (int r : t.receivers) {
      if (in_zone) break;
      in_zone = zone.count(r) != 0;
    }
    (in_zone ? v1 : v2).push_back(v);
  }

  std::vector<int> union_members;
  if (!v1.empty()) {
    auto [g1, back1] = induced_subgraph(g, v1);
    const IndependentSet a1 =
        options.approximate_solver ? options.approximate_solver(g1) : greedy_maximal_is(g1);
    for (int v : a1.members) union_members.push_back(back1[static_cast<std::size_t>(v)]);
  }
  if (!v2.empty()) {
    auto [g2, back2] = induced_subgraph(g, v2);
    const IndependentSet a2 = exact_mwis(g2, options.mwis);
    for (int v : a2.members) union_members.push_back(back2[static_cast<std::size_t>(v)]);
  }
  std::sort(union_members.begin(), union_members.end());

  // del-min-weighted cleanup against the original graph
  std::vector<bool> alive(union_members.size(), true);
  for (std::size_t k = 0; k < union_members.size(); ++k) {
    if (!alive[k]) continue;
    for (std::size_t l = k + 1; l < union_members.size(); ++l) {
      if (!alive[k]) break;
      if (!alive[l]) continue;
      const int a = union_members[k];
      const int b = union_members[l];
      if (!g.adjacent(a, b)) continue;
      if (g.weight(a) < g.weight(b)) {
        alive[k] = false;
      } else {
        alive[l] = false;  // equal weights drop the larger index
      }
    }
  }
  IndependentSet out;
  for (std::size_t k = 0; k < union_members.size(); ++k) {
    if (alive[k]) out.members.push_back(union_members[k]);
  }

  if (options.augment_to_maximal) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      bool blocked = std::count(out.members.begin(), out.members.end(), v) != 0;
      for (int s : out.members) {
        if (blocked) break;
        blocked = g.adjacent(v, s);
      }
      if (!blocked) out.members.push_back(v);
    }
    std::sort(out.members.begin(), out.members.end());
  }
  out.weight = g.total_weight(out.members);
  return out;
}

}  // namespace clawbreak
