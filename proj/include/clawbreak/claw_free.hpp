#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/edge_ledger.hpp"
#include "clawbreak/rng.hpp"

namespace clawbreak {

/// Weighted Caro-Wei bound: sum of w(v)/(d_v+1). A lower bound on the
/// expected maximal-IS weight, hence on the MWIS weight.
inline double caro_wei(const ConflictGraph& g) {
  double total = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    total += g.weight(v) / (g.degree(v) + 1);
  }
  return total;
}

struct ClawFreeOptions {
  bool deterministic_ties = false;  // lowest canonical edge instead of sampling
  bool record_trace = false;
};

struct ClawFreeTraceRow {
  int u = 0;
  int v = 0;
  std::int64_t delta = 0;
  double loss = 0.0;
  bool escape = false;
  long long claws_after = 0;
};

struct ClawFreeResult {
  ConflictGraph graph;                          // claw-free
  std::vector<std::pair<int, int>> added_edges;  // insertion order
  int iterations = 0;
  int escape_count = 0;
  std::vector<ClawFreeTraceRow> trace;  // only when requested
};

/// Greedy edge insertion until no claw remains: repeatedly add the missing
/// edge maximizing claw decrease per estimated MWIS-weight loss, with the
/// delta* fallback when every insertion is a net loss. Terminates within the
/// initial missing-edge count since the edge set strictly grows and complete
/// graphs are claw-free.
inline ClawFreeResult make_claw_free(const ConflictGraph& g, std::uint64_t seed,
                                     const ClawFreeOptions& options = {}) {
  ClawFreeResult result;
  result.graph = g;
  EdgeLedger led = init_ledger(result.graph);
  Rng rng(seed);

  const std::size_t n = static_cast<std::size_t>(g.num_vertices());
  const std::size_t initial_missing = n * (n - 1) / 2 - g.num_edges();
  while (led.claw_count > 0) {
    if (static_cast<std::size_t>(result.iterations) >= initial_missing) {
      throw std::logic_error("claw freeing exceeded the missing-edge bound");
    }
    const SelectedEdge sel = select_edge(result.graph, led, rng, options.deterministic_ties);
    apply_edge(result.graph, led, sel.u, sel.v);
    result.added_edges.emplace_back(sel.u, sel.v);
    ++result.iterations;
    if (sel.escape) ++result.escape_count;
    if (options.record_trace) {
      result.trace.push_back(
          ClawFreeTraceRow{sel.u, sel.v, sel.delta, sel.loss, sel.escape, led.claw_count});
    }
  }
  return result;
}

}  // namespace clawbreak
