#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/edge_ledger.hpp"

namespace clawbreak {

/// Reference ledger built from the definitions alone, with no incremental
/// bookkeeping: degrees and contributions read off the graph, C from a full
/// claw count, delta_star_e from the materialized claw list (a claw dies
/// exactly when both endpoints of e are among its leaves), and delta_e by
/// literally inserting e, recounting claws, and subtracting. Asymptotically
/// slower than init_ledger/apply_edge; meant for tests and the acceptance
/// suite.
inline EdgeLedger recompute_ledger_naive(const ConflictGraph& g) {
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
  led.claw_count = count_claws(g);

  for (const Claw& c : list_claws(g)) {
    led.delta_star.add(c.leaves[0], c.leaves[1], 1);
    led.delta_star.add(c.leaves[0], c.leaves[2], 1);
    led.delta_star.add(c.leaves[1], c.leaves[2], 1);
  }

  ConflictGraph scratch = g;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      scratch.add_edge(u, v);
      led.delta.set(u, v, led.claw_count - count_claws(scratch));
      scratch.remove_edge(u, v);
    }
  }
  return led;
}

/// Field-for-field comparison over the graph's missing edges. Integers must
/// match exactly; S and M within `rel_tol` relative. Returns a description of
/// the first mismatch, or nullopt when the ledgers agree.
inline std::optional<std::string> ledger_mismatch(const ConflictGraph& g, const EdgeLedger& got,
                                                  const EdgeLedger& want, double rel_tol = 1e-12) {
  const int n = g.num_vertices();
  auto close = [rel_tol](double x, double y) {
    const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
    return std::abs(x - y) <= rel_tol * scale;
  };
  if (got.claw_count != want.claw_count) {
    return "claw count " + std::to_string(got.claw_count) + " != " +
           std::to_string(want.claw_count);
  }
  for (int v = 0; v < n; ++v) {
    if (got.degree[static_cast<std::size_t>(v)] != want.degree[static_cast<std::size_t>(v)]) {
      return "degree mismatch at vertex " + std::to_string(v);
    }
    if (!close(got.contrib[static_cast<std::size_t>(v)], want.contrib[static_cast<std::size_t>(v)])) {
      return "contribution mismatch at vertex " + std::to_string(v);
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      if (got.delta.get(u, v) != want.delta.get(u, v)) {
        return "delta mismatch at (" + std::to_string(u) + "," + std::to_string(v) + "): " +
               std::to_string(got.delta.get(u, v)) + " != " + std::to_string(want.delta.get(u, v));
      }
      if (got.delta_star.get(u, v) != want.delta_star.get(u, v)) {
        return "delta* mismatch at (" + std::to_string(u) + "," + std::to_string(v) + ")";
      }
      if (!close(got.loss(u, v), want.loss(u, v))) {
        return "loss mismatch at (" + std::to_string(u) + "," + std::to_string(v) + ")";
      }
    }
  }
  return std::nullopt;
}

}  // namespace clawbreak
