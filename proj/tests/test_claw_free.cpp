#include "clawbreak/claw_free.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/ledger_oracle.hpp"
#include "clawbreak/scheduling.hpp"
#include "clawbreak/topologies.hpp"
#include "oracles.hpp"

using namespace clawbreak;

namespace {

TEST(CaroWei, DirectFormula) {
  EXPECT_DOUBLE_EQ(caro_wei(synthetic_graph(5, {})), 5.0);
  EXPECT_DOUBLE_EQ(caro_wei(synthetic_graph(2, {{0, 1}})), 1.0);
}

TEST(CaroWei, BoundedByExactMwisOnExampleLine) {
  const ConflictGraph g = build_conflict_graph(line_network(example_line_spec()));
  const double cw = caro_wei(g);
  const double exact = oracles::exhaustive_mwis_weight(g);
  EXPECT_DOUBLE_EQ(exact, 2.0);
  EXPECT_LE(cw, exact);
}

TEST(CaroWei, LowerBoundsExactOnRandomInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Rng r = rng.stream(static_cast<std::uint64_t>(trial));
    const ConflictGraph g = oracles::random_graph(r, 6 + static_cast<int>(r.below(12)),
                                                  0.1 + 0.6 * r.unit(), true);
    EXPECT_LE(caro_wei(g), oracles::exhaustive_mwis_weight(g) + 1e-9);
  }
}

TEST(MakeClawFree, AlreadyClawFreeIsUntouched) {
  const ConflictGraph g = build_conflict_graph(line_network(example_line_spec()));
  const ClawFreeResult res = make_claw_free(g, 1);
  EXPECT_EQ(res.iterations, 0);
  EXPECT_TRUE(res.added_edges.empty());
  EXPECT_EQ(res.graph.num_edges(), g.num_edges());
}

TEST(MakeClawFree, K13NeedsOneEdge) {
  const ConflictGraph g = synthetic_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  const ClawFreeResult res = make_claw_free(g, 7);
  EXPECT_EQ(res.iterations, 1);
  EXPECT_EQ(count_claws(res.graph), 0);
  EXPECT_EQ(res.escape_count, 0);
}

TEST(MakeClawFree, OneEdgeCanBreakSeveralClaws) {
  // star with 4 independent leaves: 4 claws; one leaf-leaf edge kills 2
  // claws, and the rest goes in one more step each; delta always matches C.
  const ConflictGraph g = synthetic_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  ClawFreeOptions opt;
  opt.record_trace = true;
  const ClawFreeResult res = make_claw_free(g, 9, opt);
  EXPECT_EQ(count_claws(res.graph), 0);
  long long claws = 4;
  for (const ClawFreeTraceRow& row : res.trace) {
    claws -= row.delta;
    EXPECT_EQ(row.claws_after, claws);
  }
  EXPECT_EQ(claws, 0);
}

TEST(MakeClawFree, PetersenTerminatesThroughEscapes) {
  const ConflictGraph g = oracles::petersen();
  const ClawFreeResult res = make_claw_free(g, 11);
  EXPECT_EQ(count_claws(res.graph), 0);
  EXPECT_GE(res.escape_count, 1);  // first step must escape
  EXPECT_LE(res.added_edges.size(), 45u - 15u);
}

TEST(MakeClawFree, DeterministicModeIsReproducible) {
  Rng rng(77);
  const ConflictGraph g = oracles::random_graph(rng, 14, 0.25);
  ClawFreeOptions opt;
  opt.deterministic_ties = true;
  const ClawFreeResult a = make_claw_free(g, 1, opt);
  const ClawFreeResult b = make_claw_free(g, 2, opt);  // seed must not matter
  EXPECT_EQ(a.added_edges, b.added_edges);
}

TEST(MakeClawFree, SeededRunsAreReproducible) {
  Rng rng(78);
  const ConflictGraph g = oracles::random_graph(rng, 14, 0.25);
  const ClawFreeResult a = make_claw_free(g, 42);
  const ClawFreeResult b = make_claw_free(g, 42);
  EXPECT_EQ(a.added_edges, b.added_edges);
}

TEST(MakeClawFree, SoundOnRandomGraphsWithinEdgeBound) {
  Rng rng(13579);
  for (int trial = 0; trial < 30; ++trial) {
    Rng r = rng.stream(static_cast<std::uint64_t>(trial));
    const int n = 6 + static_cast<int>(r.below(12));
    const ConflictGraph g = oracles::random_graph(r, n, 0.1 + 0.5 * r.unit(), true);
    const std::size_t missing0 = g.missing_edges().size();
    const ClawFreeResult res = make_claw_free(g, r.next_u64());
    EXPECT_EQ(count_claws(res.graph), 0);
    EXPECT_LE(res.added_edges.size(), missing0);
    for (auto [u, v] : res.added_edges) EXPECT_FALSE(g.adjacent(u, v));
  }
}

TEST(MakeClawFree, ContributionSumNeverIncreases) {
  Rng rng(8642);
  ConflictGraph g = oracles::random_graph(rng, 12, 0.2, true);
  EdgeLedger led = init_ledger(g);
  auto total = [&]() {
    return std::accumulate(led.contrib.begin(), led.contrib.end(), 0.0);
  };
  double prev = total();
  Rng pick(1);
  while (led.claw_count > 0) {
    const SelectedEdge sel = select_edge(g, led, pick);
    apply_edge(g, led, sel.u, sel.v);
    const double cur = total();
    EXPECT_LE(cur, prev + 1e-12);
    prev = cur;
  }
}

// Ledger coherence across a whole run on directional conflict graphs.
TEST(MakeClawFree, LedgerStaysCoherentOnConflictGraphs) {
  Rng rng(1122);
  int with_claws = 0;
  for (int trial = 0; trial < 40 && with_claws < 6; ++trial) {
    auto [net, g0] = oracles::random_instance(rng.stream(static_cast<std::uint64_t>(trial)), 10,
                                              20.0, 12.0);
    if (count_claws(g0) == 0 || g0.num_vertices() > 40) continue;
    ++with_claws;
    ConflictGraph g = g0;
    EdgeLedger led = init_ledger(g);
    Rng pick(trial);
    while (led.claw_count > 0) {
      const SelectedEdge sel = select_edge(g, led, pick);
      apply_edge(g, led, sel.u, sel.v);
      const auto mismatch = ledger_mismatch(g, led, recompute_ledger_naive(g));
      ASSERT_FALSE(mismatch.has_value()) << "trial " << trial << ": " << *mismatch;
    }
    EXPECT_EQ(count_claws(g), 0);
  }
  EXPECT_GE(with_claws, 3);
}

TEST(EstimatorConsistency, MonteCarloRespectsCaroWei) {
  Rng rng(5151);
  for (int trial = 0; trial < 10; ++trial) {
    Rng r = rng.stream(static_cast<std::uint64_t>(trial));
    const ConflictGraph g = oracles::random_graph(r, 12, 0.3, true);
    const WeightEstimate est = expected_maximal_is(g, 3000, r.next_u64());
    EXPECT_GE(est.mean, caro_wei(g) - 3.0 * est.std_error);
  }
}

}  // namespace
