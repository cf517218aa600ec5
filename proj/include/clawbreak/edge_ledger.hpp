#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "clawbreak/bitset.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/rng.hpp"

namespace clawbreak {

/// Bookkeeping for the claw-freeing iteration.
///
/// Per vertex: degree d_v and the expected-maximal-IS contribution
/// S_v = w(v)/(d_v+1). Per missing edge e: the net claw decrease delta_e if e
/// were inserted, and delta_star_e, the number of current claws e would
/// destroy. The estimated contribution loss M_e is derived on demand from
/// (S, d), so it never goes stale. claw_count is C.
struct EdgeLedger {
  std::vector<int> degree;
  std::vector<double> contrib;        // S_v
  PairArray<std::int64_t> delta;      // meaningful on missing edges only
  PairArray<std::int64_t> delta_star;
  long long claw_count = 0;

  /// M_e = w(u)/((d_u+1)(d_u+2)) + w(v)/((d_v+1)(d_v+2)), written as
  /// S_u/(d_u+2) + S_v/(d_v+2).
  double loss(int u, int v) const {
    return contrib[static_cast<std::size_t>(u)] / (degree[static_cast<std::size_t>(u)] + 2) +
           contrib[static_cast<std::size_t>(v)] / (degree[static_cast<std::size_t>(v)] + 2);
  }
};

/// Ledger for the current graph, built exactly as Algorithm 2 prescribes: one
/// pass per vertex enumerating independent neighbor triples (claws: bump C and
/// the three leaf-leaf entries) and independent neighbor pairs with a
/// disconnected fourth vertex (pre-claws: debit the (center, outsider) entry).
inline EdgeLedger init_ledger(const ConflictGraph& g) {
  const int n = g.num_vertices();
  EdgeLedger led;
  led.degree.resize(static_cast<std::size_t>(n));
  led.contrib.resize(static_cast<std::size_t>(n));
  led.delta = PairArray<std::int64_t>(static_cast<std::size_t>(n));
  led.delta_star = PairArray<std::int64_t>(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    led.degree[static_cast<std::size_t>(v)] = g.degree(v);
    led.contrib[static_cast<std::size_t>(v)] = g.weight(v) / (g.degree(v) + 1);
  }
  for (int v = 0; v < n; ++v) {
    const std::vector<int> nb = g.neighbors_of(v);
    const std::size_t m = nb.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const int u1 = nb[a];
        const int u2 = nb[b];
        if (g.adjacent(u1, u2)) continue;
        for (std::size_t c = b + 1; c < m; ++c) {
          const int u3 = nb[c];
          if (g.adjacent(u1, u3) || g.adjacent(u2, u3)) continue;
          led.delta.add(u1, u2, 1);
          led.delta.add(u1, u3, 1);
          led.delta.add(u2, u3, 1);
          led.delta_star.add(u1, u2, 1);
          led.delta_star.add(u1, u3, 1);
          led.delta_star.add(u2, u3, 1);
          ++led.claw_count;
        }
        // pre-claws with this K_{1,2}: every vertex detached from v, u1, u2
        for (int z = 0; z < n; ++z) {
          if (z == v || z == u1 || z == u2) continue;
          if (!g.adjacent(z, v) && !g.adjacent(z, u1) && !g.adjacent(z, u2)) {
            led.delta.add(v, z, -1);
          }
        }
      }
    }
  }
  return led;
}

struct SelectedEdge {
  int u = -1;
  int v = -1;
  std::int64_t delta = 0;
  std::int64_t delta_star = 0;
  double loss = 0.0;
  bool escape = false;  // the delta*/fallback rule chose this edge
};

/// Argmax of delta_e / M_e over missing edges; if that argmax has
/// delta_e <= 0, falls back to the argmax of delta_star_e. Ratio comparisons
/// are cross-multiplied (M_e > 0) so the ordering is exact in the integers and
/// reproducible in the floats. Ties are sampled uniformly with `rng`, or
/// resolved to the lowest canonical pair when `deterministic` is set.
inline SelectedEdge select_edge(const ConflictGraph& g, const EdgeLedger& led, Rng& rng,
                                bool deterministic = false) {
  const int n = g.num_vertices();
  if (led.claw_count <= 0) throw SpecViolation("select_edge requires C > 0");

  std::vector<std::pair<int, int>> best;
  std::int64_t best_delta = 0;
  double best_loss = 1.0;
  bool have = false;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      const std::int64_t d = led.delta.get(u, v);
      const double m = led.loss(u, v);
      if (!have) {
        have = true;
        best_delta = d;
        best_loss = m;
        best.assign(1, {u, v});
        continue;
      }
      const double lhs = static_cast<double>(d) * best_loss;
      const double rhs = static_cast<double>(best_delta) * m;
      if (lhs > rhs) {
        best_delta = d;
        best_loss = m;
        best.assign(1, {u, v});
      } else if (lhs == rhs) {
        best.push_back({u, v});
      }
    }
  }
  if (!have) {
    // complete graphs are claw-free, so C > 0 implies a missing edge exists
    throw std::logic_error("no missing edges with C > 0");
  }

  SelectedEdge sel;
  if (best_delta <= 0) {
    // local-optimum escape: every insertion is a net loss; destroy as many
    // current claws as possible instead
    sel.escape = true;
    best.clear();
    std::int64_t best_star = 0;
    bool star_have = false;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.adjacent(u, v)) continue;
        const std::int64_t s = led.delta_star.get(u, v);
        if (!star_have || s > best_star) {
          star_have = true;
          best_star = s;
          best.assign(1, {u, v});
        } else if (s == best_star) {
          best.push_back({u, v});
        }
      }
    }
  }

  const std::size_t pick =
      (deterministic || best.size() == 1) ? 0 : static_cast<std::size_t>(rng.below(best.size()));
  sel.u = best[pick].first;
  sel.v = best[pick].second;
  sel.delta = led.delta.get(sel.u, sel.v);
  sel.delta_star = led.delta_star.get(sel.u, sel.v);
  sel.loss = led.loss(sel.u, sel.v);
  return sel;
}

/// Inserts missing edge (a, b) and patches the ledger in place.
///
/// Structure changes decompose into five cases, all anchored on the endpoint
/// pair: claws destroyed (a, b were co-leaves), claws created (one endpoint
/// becomes the center), pre-claws destroyed by joining their leaf pair,
/// pre-claws destroyed by attaching their outsider to a leaf, and pre-claws
/// created around a new center-leaf edge. Cost is O(N^2) per insertion. All
/// neighbor sets below are taken before the insertion.
inline void apply_edge(ConflictGraph& g, EdgeLedger& led, int a, int b) {
  if (g.adjacent(a, b)) throw EdgeAlreadyPresent(a, b);
  const int n = g.num_vertices();

  const std::vector<int> na = g.neighbors_of(a);
  const std::vector<int> nb = g.neighbors_of(b);
  std::vector<int> common;
  std::vector<int> only_a;  // N(a) \ N(b); cannot contain b since (a,b) was missing
  std::vector<int> only_b;
  for (int u : na) (g.adjacent(u, b) ? common : only_a).push_back(u);
  for (int u : nb) {
    if (!g.adjacent(u, a)) only_b.push_back(u);
  }

  for (int z = 0; z < n; ++z) {
    if (z == a || z == b || g.adjacent(z, a) || g.adjacent(z, b)) continue;
    // z is a candidate third leaf / outsider, detached from both endpoints
    for (int r : common) {
      if (g.adjacent(r, z)) {
        // claw {r; a, b, z} destroyed
        led.delta.add(a, z, -1);
        led.delta.add(b, z, -1);
        led.delta_star.add(a, z, -1);
        led.delta_star.add(b, z, -1);
      } else {
        // pre-claw (r; {a, b}; z) destroyed
        led.delta.add(r, z, 1);
      }
    }
    for (const auto& [s, t, excl] :
         {std::tuple<int, int, const std::vector<int>*>{a, b, &only_a},
          std::tuple<int, int, const std::vector<int>*>{b, a, &only_b}}) {
      for (int u : *excl) {
        if (g.adjacent(u, z)) {
          // pre-claw (u; {s, z}; t) destroyed: t is no longer detached
          led.delta.add(t, u, 1);
        } else {
          // pre-claw (s; {t, u}; z) created
          led.delta.add(s, z, -1);
        }
      }
    }
  }

  // claws created with an endpoint as center: {s; t, u, u2}
  for (const auto& [s, t, excl] :
       {std::tuple<int, int, const std::vector<int>*>{a, b, &only_a},
        std::tuple<int, int, const std::vector<int>*>{b, a, &only_b}}) {
    const std::vector<int>& ex = *excl;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      for (std::size_t j = i + 1; j < ex.size(); ++j) {
        const int u = ex[i];
        const int u2 = ex[j];
        if (g.adjacent(u, u2)) continue;
        led.delta.add(u, u2, 1);
        led.delta.add(t, u, 1);
        led.delta.add(t, u2, 1);
        led.delta_star.add(u, u2, 1);
        led.delta_star.add(t, u, 1);
        led.delta_star.add(t, u2, 1);
      }
    }
  }

  led.claw_count -= led.delta.get(a, b);
  led.delta.set(a, b, 0);
  led.delta_star.set(a, b, 0);

  g.add_edge(a, b);
  for (int v : {a, b}) {
    led.degree[static_cast<std::size_t>(v)] = g.degree(v);
    led.contrib[static_cast<std::size_t>(v)] = g.weight(v) / (g.degree(v) + 1);
  }
}

}  // namespace clawbreak
