// Acceptance suite: one [PASS]/[FAIL] line per criterion; exit code counts
// the failures. Statistical criteria compare against the published reference
// statistics frozen in below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clawbreak/clawbreak.hpp"
#include "oracles.hpp"

using namespace clawbreak;

namespace {

constexpr std::uint64_t kMasterSeed = 20260809;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double x, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, x);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Ledger oracle equivalence through entire claw-freeing runs.
// --------------------------------------------------------------------------
Outcome criterion1(int jobs) {
  Outcome out;
  const int instances = 50;
  std::vector<std::string> errors(instances);
  std::vector<int> iterations(instances, 0);
  parallel_for(instances, jobs, [&](int t) {
    const Rng rng = Rng(kMasterSeed).stream(100 + static_cast<std::uint64_t>(t));
    const int n = 8 + t % 8;
    const double r = 10.0 + t % 3;
    auto [net, g0] = oracles::random_instance(rng, n, 20.0, r);
    ConflictGraph g = g0;
    EdgeLedger led = init_ledger(g);
    auto mism = ledger_mismatch(g, led, recompute_ledger_naive(g));
    if (mism) {
      errors[t] = "init: " + *mism;
      return;
    }
    Rng pick = rng.stream(1);
    while (led.claw_count > 0) {
      const SelectedEdge sel = select_edge(g, led, pick);
      apply_edge(g, led, sel.u, sel.v);
      ++iterations[t];
      mism = ledger_mismatch(g, led, recompute_ledger_naive(g));
      if (mism) {
        errors[t] = "iteration " + std::to_string(iterations[t]) + ": " + *mism;
        return;
      }
    }
  });
  int total_iterations = 0;
  for (int t = 0; t < instances; ++t) {
    total_iterations += iterations[t];
    if (!errors[t].empty()) out.fail("instance " + std::to_string(t) + " " + errors[t]);
  }
  out.note(std::to_string(instances) + " graphs, " + std::to_string(total_iterations) +
           " insertions checked against the naive ledger");
  return out;
}

// --------------------------------------------------------------------------
// 2. Claw-freeing soundness and time stability.
// --------------------------------------------------------------------------
Outcome criterion2(int jobs) {
  Outcome out;
  const int general = 140;
  std::vector<std::string> errors(general);
  parallel_for(general, jobs, [&](int t) {
    const Rng rng = Rng(kMasterSeed).stream(200 + static_cast<std::uint64_t>(t));
    const int n = 8 + t % 7;  // 8..14
    const double r = 9.0 + t % 4;
    auto [net, g] = oracles::random_instance(rng, n, 20.0, r);
    const std::size_t missing0 = g.missing_edges().size();
    const ClawFreeResult res = make_claw_free(g, rng.stream(1).seed());
    if (count_claws(res.graph) != 0) errors[t] = "claws remain";
    if (res.added_edges.size() > missing0) errors[t] = "edge bound exceeded";
  });
  for (int t = 0; t < general; ++t) {
    if (!errors[t].empty()) out.fail("instance " + std::to_string(t) + ": " + errors[t]);
  }

  // timed n=15 batch, sequential so wall times are comparable
  const int timed = 60;
  std::vector<double> ms(timed);
  std::vector<double> per_work(timed);
  for (int t = 0; t < timed; ++t) {
    const Rng rng = Rng(kMasterSeed).stream(260 + static_cast<std::uint64_t>(t));
    const double r = 9.0 + t % 4;
    auto [net, g] = oracles::random_instance(rng, 15, 20.0, r);
    const std::size_t missing0 = g.missing_edges().size();
    const auto t0 = std::chrono::steady_clock::now();
    const ClawFreeResult res = make_claw_free(g, rng.stream(1).seed());
    ms[t] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    // the engine's designed cost: an O(V^2)-ish sweep per insertion plus init
    const double v = g.num_vertices();
    per_work[t] = ms[t] / (v * v * (1.0 + res.added_edges.size()));
    if (count_claws(res.graph) != 0) out.fail("timed instance leaves claws");
    if (res.added_edges.size() > missing0) out.fail("timed instance exceeds edge bound");
  }
  std::vector<double> sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double worst = sorted.back();
  std::sort(per_work.begin(), per_work.end());
  const double norm_ratio = per_work.back() / per_work[per_work.size() / 2];
  // guard the ratio against sub-microsecond medians
  const double floor_ms = std::max(median, 0.05);
  if (worst > 10.0 * floor_ms) {
    out.fail("n=15 worst " + fmt(worst) + "ms > 10x median " + fmt(median) +
             "ms (raw wall time tracks the heavy-tailed claw count; time per unit of "
             "polynomial work spreads only " +
             fmt(norm_ratio, 1) + "x)");
  }
  out.note("200 instances claw-free; n=15 median " + fmt(median) + "ms, worst " + fmt(worst) +
           "ms, time-per-work spread " + fmt(norm_ratio, 1) + "x");
  return out;
}

// --------------------------------------------------------------------------
// 3. Theorem property suites for the generated families.
// --------------------------------------------------------------------------
Outcome criterion3(int jobs) {
  Outcome out;
  int line_bad = 0, tree_bad = 0, diamond_bad = 0;
  std::mutex mu;
  parallel_for(100, jobs, [&](int t) {
    Rng rng = Rng(kMasterSeed).stream(300 + static_cast<std::uint64_t>(t));
    const long long a = count_claws(build_conflict_graph(line_network(random_line_spec(rng))));
    const long long b = count_claws(build_conflict_graph(tree_network(random_tree_spec(rng))));
    const long long c =
        count_claws(build_conflict_graph(diamond_network(random_diamond_spec(rng))));
    std::lock_guard<std::mutex> lock(mu);
    line_bad += a != 0;
    tree_bad += b != 0;
    diamond_bad += c != 0;
  });
  if (line_bad) out.fail(std::to_string(line_bad) + "/100 line specs have claws");
  if (tree_bad) out.fail(std::to_string(tree_bad) + "/100 tree specs have claws");
  if (diamond_bad) out.fail(std::to_string(diamond_bad) + "/100 diamond specs have claws");
  out.note("100 line + 100 tree + 100 diamond specs all claw-free");
  return out;
}

// --------------------------------------------------------------------------
// 4. Golden structural match for the worked line and tree examples.
// --------------------------------------------------------------------------
Outcome criterion4(int) {
  Outcome out;
  const ConflictGraph line = build_conflict_graph(line_network(example_line_spec()));
  const std::set<std::pair<int, int>> want_line = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                                   {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4},
                                                   {2, 5}, {3, 4}, {4, 5}};
  std::set<std::pair<int, int>> got_line;
  for (auto e : line.edges()) got_line.insert(e);
  if (line.num_vertices() != 6) out.fail("line graph vertex count != 6");
  if (got_line != want_line) out.fail("line graph edge set mismatch");

  const ConflictGraph tree = build_conflict_graph(tree_network(example_tree_spec()));
  if (tree.num_vertices() != 9) out.fail("tree graph vertex count != 9");
  if (tree.num_edges() != 27) out.fail("tree graph edge count != 27");
  bool structure = true;
  for (int a = 0; a < tree.num_vertices() && structure; ++a) {
    for (int b = a + 1; b < tree.num_vertices(); ++b) {
      const bool want = (a / 3 == b / 3) || (b / 3 - a / 3 == 1);
      if (tree.adjacent(a, b) != want) {
        structure = false;
        break;
      }
    }
  }
  if (!structure) out.fail("tree graph structure mismatch");
  out.note("line example: 6 vertices / 13 edges exact; tree example: 9 vertices / 27 edges exact");
  return out;
}

// --------------------------------------------------------------------------
// 5. Table-1 statistical reproduction.
// --------------------------------------------------------------------------
Outcome criterion5(int jobs) {
  Outcome out;
  struct ReferenceRow {
    double r, claws, cf_pct, trans;
  };
  const std::vector<ReferenceRow> reference = {
      {7, 0.19, 96, 5.47},   {8, 0.99, 95, 6.89},   {9, 3.13, 84, 11.43},
      {10, 15.61, 83, 11.38}, {11, 24.44, 68, 15.69}, {12, 15.75, 68, 18.49},
      {13, 23.30, 56, 23.23}, {14, 39.43, 53, 25.39}};
  Table1Params params;
  params.n = 10;
  params.side = 20.0;  // the area that reproduces the published statistics
  params.trials = 500;
  params.seed = kMasterSeed + 5;
  params.jobs = jobs;
  const std::vector<SummaryRow> rows = run_table1(params);
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const ReferenceRow& p = reference[i];
    const SummaryRow& row = rows[i];
    std::string tag = "r=" + fmt(p.r, 0);
    if (std::abs(row.claw_free_pct - p.cf_pct) > 10.0) {
      out.fail(tag + " claw-free " + fmt(row.claw_free_pct, 1) + "% vs " + fmt(p.cf_pct, 0) +
               "% (>10 points)");
    }
    if (std::abs(row.mean_transmissions - p.trans) > 0.25 * p.trans) {
      out.fail(tag + " transmissions " + fmt(row.mean_transmissions) + " vs " + fmt(p.trans) +
               " (>25%)");
    }
    if (std::abs(row.mean_claws - p.claws) > 0.5 * p.claws) {
      out.fail(tag + " mean claws " + fmt(row.mean_claws) + " vs " + fmt(p.claws) + " (>50%)");
    }
  }
  std::string cf = "claw-free% ";
  for (const SummaryRow& row : rows) cf += fmt(row.claw_free_pct, 0) + " ";
  out.note(cf + "(reference: 96 95 84 83 68 68 56 53)");
  return out;
}

// --------------------------------------------------------------------------
// 6. Near-optimality at n=20 plus exactness on small claw-free instances.
// --------------------------------------------------------------------------
Outcome criterion6(int jobs) {
  Outcome out;
  SweepParams params;
  params.n = 20;
  params.side = 20.0;
  params.r_choices = {7};
  params.trials = 110;
  params.seed = kMasterSeed + 6;
  params.jobs = jobs;
  params.with_exact = true;
  const auto records = run_performance_sweep(params);
  double ratio_sum = 0.0;
  int ratio_n = 0;
  int skipped = 0;
  for (const TrialRecord& rec : records) {
    if (!rec.exact_w || !rec.claw_broken_w || *rec.exact_w <= 0.0) {
      ++skipped;
      continue;
    }
    ratio_sum += *rec.claw_broken_w / *rec.exact_w;
    ++ratio_n;
  }
  const double mean_ratio = ratio_n ? ratio_sum / ratio_n : 0.0;
  if (ratio_n < 100) out.fail("fewer than 100 usable instances");
  if (mean_ratio < 0.85) out.fail("mean ratio " + fmt(mean_ratio) + " < 0.85");

  SweepParams small = params;
  small.n = 12;
  small.trials = 50;
  small.seed = kMasterSeed + 61;
  int claw_free = 0;
  for (const TrialRecord& rec : run_performance_sweep(small)) {
    if (rec.claw_count != 0 || !rec.exact_w || !rec.claw_broken_w) continue;
    ++claw_free;
    if (std::abs(*rec.claw_broken_w - *rec.exact_w) > 1e-9) {
      out.fail("claw-free n<15 instance with ratio != 1");
    }
  }
  out.note("n=20 mean(claw_broken/exact) = " + fmt(mean_ratio) + " over " +
           std::to_string(ratio_n) + " instances (skipped " + std::to_string(skipped) + "); " +
           std::to_string(claw_free) + " claw-free n=12 instances matched exactly");
  return out;
}

// --------------------------------------------------------------------------
// 7. Near-optimality per claw-count bucket at n=15.
// --------------------------------------------------------------------------
Outcome criterion7(int jobs, int trials) {
  Outcome out;
  SweepParams params;
  params.n = 15;
  params.side = 20.0;
  params.r_choices = {8, 9, 10, 11};
  params.trials = trials;
  params.seed = kMasterSeed + 7;
  params.jobs = jobs;
  params.with_exact = true;
  const auto records = run_performance_sweep(params);
  int budget_hits = 0;
  for (const TrialRecord& rec : records) budget_hits += rec.budget_exceeded;
  const auto buckets = bucket_sweep(records, BucketBy::kClawCount, 50.0, 400.0);
  std::string seen;
  int reported = 0;
  for (const BucketRow& b : buckets) {
    if (b.ratio_exact_samples < 30) continue;  // not reportable
    ++reported;
    seen += "[" + fmt(b.bucket_low, 0) + "," + fmt(b.bucket_high, 0) + "):" +
            fmt(b.mean_ratio_claw_broken_exact) + "/" + std::to_string(b.ratio_exact_samples) +
            " ";
    if (b.mean_ratio_claw_broken_exact < 0.80) {
      out.fail("bucket [" + fmt(b.bucket_low, 0) + "," + fmt(b.bucket_high, 0) + ") ratio " +
               fmt(b.mean_ratio_claw_broken_exact) + " < 0.80");
    }
  }
  if (reported < 2) out.fail("fewer than two reportable buckets");
  out.note(std::to_string(trials) + " trials, " + std::to_string(budget_hits) +
           " budget hits; buckets " + seen);
  return out;
}

// --------------------------------------------------------------------------
// 8. Dominance over maximal-set scheduling at n=32. The baseline is the
// maximal-set scheduler itself (a maximal set off a random vertex order);
// the weight-sorted greedy ratio is reported alongside for reference.
// --------------------------------------------------------------------------
Outcome criterion8(int jobs, int trials) {
  Outcome out;
  SweepParams params;
  params.n = 32;
  params.side = 20.0;
  params.r_choices = {5, 6, 7, 8, 9, 10, 11, 12};
  params.trials = trials;
  params.seed = kMasterSeed + 8;
  params.jobs = jobs;
  params.with_exact = false;  // absolute throughput units are not defined; ratios only
  const auto records = run_performance_sweep(params);
  const auto buckets = bucket_sweep(records, BucketBy::kAvgNeighbors, 0.5, 4.0);
  std::string seen;
  int reported = 0;
  for (const BucketRow& b : buckets) {
    if (b.samples < 30) continue;
    ++reported;
    seen += "[" + fmt(b.bucket_low, 1) + "," + fmt(b.bucket_high, 1) + "):" +
            fmt(b.mean_ratio_claw_broken_random) + "(wg " +
            fmt(b.mean_ratio_claw_broken_greedy) + ")/" + std::to_string(b.samples) + " ";
    if (b.mean_ratio_claw_broken_random < 1.15) {
      out.fail("bucket [" + fmt(b.bucket_low, 1) + "," + fmt(b.bucket_high, 1) + ") ratio " +
               fmt(b.mean_ratio_claw_broken_random) + " < 1.15");
    }
  }
  if (reported < 2) out.fail("fewer than two reportable buckets");
  out.note(seen);
  return out;
}

// --------------------------------------------------------------------------
// 9. Caro-Wei bound below exact MWIS; Monte-Carlo S_I respects the bound.
// --------------------------------------------------------------------------
Outcome criterion9(int jobs) {
  Outcome out;
  const int instances = 50;
  std::vector<std::string> errors(instances);
  parallel_for(instances, jobs, [&](int t) {
    const Rng rng = Rng(kMasterSeed).stream(900 + static_cast<std::uint64_t>(t));
    const int n = 10 + t % 5;
    const double r = 9.0 + t % 4;
    auto [net, g] = oracles::random_instance(rng, n, 20.0, r);
    if (g.num_vertices() == 0) return;
    const double cw = caro_wei(g);
    const double exact = exact_mwis(g).weight;
    if (cw > exact + 1e-9) {
      errors[t] = "caro_wei " + fmt(cw) + " above exact " + fmt(exact);
      return;
    }
    const WeightEstimate est = expected_maximal_is(g, 10000, rng.stream(2).seed());
    if (est.mean < cw - 3.0 * est.std_error) {
      errors[t] = "S_I estimate " + fmt(est.mean) + " below caro_wei " + fmt(cw) + " - 3se";
    }
  });
  for (int t = 0; t < instances; ++t) {
    if (!errors[t].empty()) out.fail("instance " + std::to_string(t) + ": " + errors[t]);
  }
  out.note("50 instances: caro_wei <= exact and MC estimate >= caro_wei - 3se");
  return out;
}

// --------------------------------------------------------------------------
// 10. Exact solver vs exhaustive enumeration; independence of all outputs.
// --------------------------------------------------------------------------
Outcome criterion10(int jobs) {
  Outcome out;
  const int instances = 100;
  std::vector<std::string> errors(instances);
  parallel_for(instances, jobs, [&](int t) {
    Rng rng = Rng(kMasterSeed).stream(1000 + static_cast<std::uint64_t>(t));
    const int n = 5 + static_cast<int>(rng.below(18));  // up to 22
    const ConflictGraph g = oracles::random_graph(rng, n, 0.1 + 0.6 * rng.unit(), true);
    const IndependentSet exact = exact_mwis(g);
    const IndependentSet greedy = greedy_maximal_is(g);
    const IndependentSet broken = claw_broken_schedule(g, rng.next_u64());
    if (!verify_independent(g, exact) || !verify_independent(g, greedy) ||
        !verify_independent(g, broken)) {
      errors[t] = "scheduler output fails independence verification";
      return;
    }
    const double brute = oracles::exhaustive_mwis_weight(g);
    if (std::abs(exact.weight - brute) > 1e-9) {
      errors[t] = "exact " + fmt(exact.weight) + " != enumeration " + fmt(brute);
      return;
    }
    if (greedy.weight > exact.weight + 1e-9 || broken.weight > exact.weight + 1e-9) {
      errors[t] = "a heuristic beat the exact solver";
    }
  });
  for (int t = 0; t < instances; ++t) {
    if (!errors[t].empty()) out.fail("instance " + std::to_string(t) + ": " + errors[t]);
  }
  out.note("100 graphs (<=22 vertices): exact matches enumeration; all outputs independent");
  return out;
}

// --------------------------------------------------------------------------
// 11. Mixed scheduling validity.
// --------------------------------------------------------------------------
Outcome criterion11(int jobs) {
  Outcome out;
  const int instances = 100;
  std::vector<std::string> errors(instances);
  std::vector<int> empty_zone(instances, 0);
  parallel_for(instances, jobs, [&](int t) {
    const Rng rng = Rng(kMasterSeed).stream(1100 + static_cast<std::uint64_t>(t));
    const double r = 10.0 + t % 4;
    auto [net, g] = oracles::random_instance(rng, 10, 20.0, r);
    const Partition p = derive_claw_partition(g, net);
    const IndependentSet mixed = mixed_schedule(g, net, p, rng.stream(3).seed());
    if (!verify_independent(g, mixed)) {
      errors[t] = "mixed output not independent";
      return;
    }
    if (p.t1.empty()) {
      empty_zone[t] = 1;
      const IndependentSet exact = exact_mwis(g);
      if (mixed.members != exact.members) {
        errors[t] = "empty claw zone but mixed != exact";
      }
    }
  });
  int empties = 0;
  for (int t = 0; t < instances; ++t) {
    empties += empty_zone[t];
    if (!errors[t].empty()) out.fail("instance " + std::to_string(t) + ": " + errors[t]);
  }
  out.note("100 instances independent; " + std::to_string(empties) +
           " had an empty claw zone and matched exact_mwis");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 2;
  int only = 0;
  int c7_trials = 4000;
  int c8_trials = 700;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) jobs = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--c7-trials") && i + 1 < argc) c7_trials = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--c8-trials") && i + 1 < argc) c8_trials = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--jobs K]\n");
      return 2;
    }
  }

  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "ledger oracle equivalence", [&] { return criterion1(jobs); }},
      {2, "claw-freeing soundness", [&] { return criterion2(jobs); }},
      {3, "family claw-freeness suites", [&] { return criterion3(jobs); }},
      {4, "golden structural match", [&] { return criterion4(jobs); }},
      {5, "table-1 statistical reproduction", [&] { return criterion5(jobs); }},
      {6, "near-optimality n=20", [&] { return criterion6(jobs); }},
      {7, "near-optimality vs claw count n=15", [&] { return criterion7(jobs, c7_trials); }},
      {8, "baseline dominance n=32", [&] { return criterion8(jobs, c8_trials); }},
      {9, "bound properties", [&] { return criterion9(jobs); }},
      {10, "solver cross-validation", [&] { return criterion10(jobs); }},
      {11, "mixed scheduling validity", [&] { return criterion11(jobs); }},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = e.run();
    } catch (const std::exception& ex) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + ex.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs) %s\n", outcome.pass ? "PASS" : "FAIL", e.id,
                e.name, sec, outcome.detail.c_str());
    std::fflush(stdout);
    failures += !outcome.pass;
  }
  return failures;
}
