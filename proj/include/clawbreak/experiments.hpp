#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/claw_free.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/json_io.hpp"
#include "clawbreak/network.hpp"
#include "clawbreak/rng.hpp"
#include "clawbreak/scheduling.hpp"

namespace clawbreak {

/// Runs fn(i) for i in [0, count) on `jobs` threads. Work items must be
/// independent; results land in preallocated slots, so the outcome does not
/// depend on the thread count.
template <class Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {
inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace detail

/// Draws a random directional network, resampling with fresh derived seeds
/// until the neighbor cap holds. Returns the network plus the resample count.
inline std::pair<Network, int> sample_capped_network(int n, double side, double r,
                                                     const ScenarioRules& rules, const Rng& trial_rng) {
  for (int attempt = 0;; ++attempt) {
    if (attempt > 100000) throw SpecViolation("neighbor cap resampling did not converge");
    Network net = random_network(n, side, r, rules, trial_rng.stream(static_cast<std::uint64_t>(attempt)).seed());
    bool ok = true;
    for (const Transceiver& t : net.transceivers()) {
      if (static_cast<int>(neighbors(net, t.id).size()) > rules.neighbor_cap) {
        ok = false;
        break;
      }
    }
    if (ok) return {std::move(net), attempt};
  }
}

// ---------------------------------------------------------------------------
// Table-1 style campaign: claw statistics per transmission range.
// ---------------------------------------------------------------------------

struct Table1Params {
  int n = 10;
  double side = 20.0;
  std::vector<double> r_list{7, 8, 9, 10, 11, 12, 13, 14};
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  ScenarioRules rules;  // DIRECTIONAL_PROTOCOL, guard 1e-6, K=5
};

struct SummaryRow {
  double r = 0.0;
  double mean_claws = 0.0;
  double connected_range_pct = 0.0;  // plain range graph
  double connected_links_pct = 0.0;  // undirected directional-link graph
  double claw_free_pct = 0.0;
  double mean_transmissions = 0.0;
  double connected_and_claw_free_pct = 0.0;  // range-graph connectivity
  long long resamples = 0;
};

inline std::vector<SummaryRow> run_table1(const Table1Params& params) {
  std::vector<SummaryRow> rows;
  const Rng base(params.seed);
  for (std::size_t ri = 0; ri < params.r_list.size(); ++ri) {
    const double r = params.r_list[ri];
    struct Trial {
      long long claws = 0;
      int transmissions = 0;
      bool conn_range = false;
      bool conn_links = false;
      int resamples = 0;
    };
    std::vector<Trial> trials(static_cast<std::size_t>(params.trials));
    parallel_for(params.trials, params.jobs, [&](int ti) {
      const Rng trial_rng =
          base.stream(ri * 1000003ULL + static_cast<std::uint64_t>(ti));
      auto [net, resamples] = sample_capped_network(params.n, params.side, r, params.rules, trial_rng);
      const ConflictGraph g = build_conflict_graph(net);
      Trial& t = trials[static_cast<std::size_t>(ti)];
      t.claws = count_claws(g);
      t.transmissions = g.num_vertices();
      t.conn_range = is_connected(net, ConnectivityGraph::kRange);
      t.conn_links = is_connected(net, ConnectivityGraph::kLinks);
      t.resamples = resamples;
    });
    SummaryRow row;
    row.r = r;
    long long claws = 0;
    long long trans = 0;
    int conn_range = 0, conn_links = 0, claw_free = 0, both = 0;
    for (const Trial& t : trials) {
      claws += t.claws;
      trans += t.transmissions;
      conn_range += t.conn_range;
      conn_links += t.conn_links;
      claw_free += t.claws == 0;
      both += t.conn_range && t.claws == 0;
      row.resamples += t.resamples;
    }
    const double m = params.trials;
    row.mean_claws = static_cast<double>(claws) / m;
    row.mean_transmissions = static_cast<double>(trans) / m;
    row.connected_range_pct = 100.0 * conn_range / m;
    row.connected_links_pct = 100.0 * conn_links / m;
    row.claw_free_pct = 100.0 * claw_free / m;
    row.connected_and_claw_free_pct = 100.0 * both / m;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Performance sweep: scheduler weights per random instance.
// ---------------------------------------------------------------------------

struct SweepParams {
  int n = 10;
  double side = 20.0;
  std::vector<double> r_choices{10, 11, 12, 13};
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool with_exact = true;
  bool with_mixed = false;
  long long budget = 100'000'000;
  ScenarioRules rules;
};

struct TrialRecord {
  std::uint64_t seed = 0;  // trial stream seed
  int n = 0;
  double side = 0.0;
  double r = 0.0;
  long long claw_count = 0;
  bool connected = false;  // range graph
  int transmission_count = 0;
  double avg_neighbors = 0.0;
  std::optional<double> exact_w;
  std::optional<double> claw_broken_w;
  double greedy_w = 0.0;         // weight-descending maximal set
  double random_maximal_w = 0.0;  // maximal set from a seeded random order
  std::optional<double> mixed_w;
  int added_edge_count = 0;
  int resamples = 0;
  bool budget_exceeded = false;
  double build_ms = 0.0;
  double claw_free_ms = 0.0;
  double exact_ms = 0.0;
};

inline std::vector<TrialRecord> run_performance_sweep(const SweepParams& params) {
  std::vector<TrialRecord> records(static_cast<std::size_t>(params.trials));
  const Rng base(params.seed);
  parallel_for(params.trials, params.jobs, [&](int ti) {
    Rng trial_rng = base.stream(static_cast<std::uint64_t>(ti));
    TrialRecord rec;
    rec.seed = trial_rng.seed();
    rec.n = params.n;
    rec.side = params.side;
    rec.r = params.r_choices[static_cast<std::size_t>(trial_rng.below(params.r_choices.size()))];

    auto [net, resamples] =
        sample_capped_network(params.n, params.side, rec.r, params.rules, trial_rng.stream(1));
    rec.resamples = resamples;

    auto t0 = std::chrono::steady_clock::now();
    const ConflictGraph g = build_conflict_graph(net);
    rec.build_ms = detail::elapsed_ms(t0);
    rec.claw_count = count_claws(g);
    rec.connected = is_connected(net, ConnectivityGraph::kRange);
    rec.transmission_count = g.num_vertices();
    double nbrs = 0.0;
    for (const Transceiver& t : net.transceivers()) {
      nbrs += static_cast<double>(neighbors(net, t.id).size());
    }
    rec.avg_neighbors = nbrs / params.n;

    rec.greedy_w = greedy_maximal_is(g).weight;
    {
      // the classic maximal-set scheduler: one maximal set off a random order
      std::vector<int> order(static_cast<std::size_t>(g.num_vertices()));
      std::iota(order.begin(), order.end(), 0);
      Rng order_rng = trial_rng.stream(4);
      order_rng.shuffle(order);
      rec.random_maximal_w = maximal_is_ordered(g, order).weight;
    }

    t0 = std::chrono::steady_clock::now();
    const MwisOptions mwis{params.budget};
    try {
      const ClawFreeResult cf = make_claw_free(g, trial_rng.stream(2).seed());
      rec.added_edge_count = static_cast<int>(cf.added_edges.size());
      IndependentSet s = exact_mwis(cf.graph, mwis);
      rec.claw_broken_w = g.total_weight(s.members);
    } catch (const BudgetExceeded&) {
      rec.budget_exceeded = true;
    }
    rec.claw_free_ms = detail::elapsed_ms(t0);

    if (params.with_exact) {
      t0 = std::chrono::steady_clock::now();
      try {
        rec.exact_w = exact_mwis(g, mwis).weight;
      } catch (const BudgetExceeded&) {
        rec.budget_exceeded = true;
      }
      rec.exact_ms = detail::elapsed_ms(t0);
    }
    if (params.with_mixed) {
      try {
        const Partition p = derive_claw_partition(g, net);
        MixedOptions opt;
        opt.mwis = mwis;
        rec.mixed_w = mixed_schedule(g, net, p, trial_rng.stream(3).seed(), opt).weight;
      } catch (const BudgetExceeded&) {
        rec.budget_exceeded = true;
      }
    }
    records[static_cast<std::size_t>(ti)] = std::move(rec);
  });
  return records;
}

// ---------------------------------------------------------------------------
// CSV and plot-recipe emission.
// ---------------------------------------------------------------------------

// The canonical CSV carries only seed-determined columns, so a campaign
// (seed, params) emits byte-identical files across runs and worker counts.
// Wall-clock diagnostics go in separate columns behind the flag.
inline std::string trial_csv_header(bool with_timings = false) {
  std::string out =
      "seed,n,side,r,claw_count,connected,transmission_count,avg_neighbors,"
      "exact_w,claw_broken_w,greedy_w,random_maximal_w,mixed_w,added_edge_count,"
      "resamples,budget_exceeded";
  if (with_timings) out += ",build_ms,claw_free_ms,exact_ms";
  return out;
}

inline std::string to_csv_row(const TrialRecord& r, bool with_timings = false) {
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  std::string out;
  out += std::to_string(r.seed);
  out += "," + std::to_string(r.n);
  out += "," + format_double(r.side);
  out += "," + format_double(r.r);
  out += "," + std::to_string(r.claw_count);
  out += r.connected ? ",1" : ",0";
  out += "," + std::to_string(r.transmission_count);
  out += "," + format_double(r.avg_neighbors);
  out += "," + opt(r.exact_w);
  out += "," + opt(r.claw_broken_w);
  out += "," + format_double(r.greedy_w);
  out += "," + format_double(r.random_maximal_w);
  out += "," + opt(r.mixed_w);
  out += "," + std::to_string(r.added_edge_count);
  out += "," + std::to_string(r.resamples);
  out += r.budget_exceeded ? ",1" : ",0";
  if (with_timings) {
    out += "," + format_double(r.build_ms);
    out += "," + format_double(r.claw_free_ms);
    out += "," + format_double(r.exact_ms);
  }
  return out;
}

inline std::string emit_csv(const std::vector<TrialRecord>& records, bool with_timings = false) {
  std::string out = trial_csv_header(with_timings) + "\n";
  for (const TrialRecord& r : records) out += to_csv_row(r, with_timings) + "\n";
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("bad double: " + s);
  return x;
}

inline std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace detail

inline std::vector<TrialRecord> parse_trial_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trial CSV");
  bool with_timings;
  if (line == trial_csv_header(false)) {
    with_timings = false;
  } else if (line == trial_csv_header(true)) {
    with_timings = true;
  } else {
    throw IoError("unexpected trial CSV header");
  }
  std::vector<TrialRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != (with_timings ? 19u : 16u)) throw IoError("bad trial CSV row");
    TrialRecord r;
    r.seed = std::stoull(f[0]);
    r.n = std::stoi(f[1]);
    r.side = detail::parse_double(f[2]);
    r.r = detail::parse_double(f[3]);
    r.claw_count = std::stoll(f[4]);
    r.connected = f[5] == "1";
    r.transmission_count = std::stoi(f[6]);
    r.avg_neighbors = detail::parse_double(f[7]);
    r.exact_w = detail::parse_opt(f[8]);
    r.claw_broken_w = detail::parse_opt(f[9]);
    r.greedy_w = detail::parse_double(f[10]);
    r.random_maximal_w = detail::parse_double(f[11]);
    r.mixed_w = detail::parse_opt(f[12]);
    r.added_edge_count = std::stoi(f[13]);
    r.resamples = std::stoi(f[14]);
    r.budget_exceeded = f[15] == "1";
    if (with_timings) {
      r.build_ms = detail::parse_double(f[16]);
      r.claw_free_ms = detail::parse_double(f[17]);
      r.exact_ms = detail::parse_double(f[18]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string summary_csv_header() {
  return "r,mean_claws,connected_range_pct,connected_links_pct,claw_free_pct,"
         "mean_transmissions,connected_and_claw_free_pct,resamples";
}

inline std::string emit_summary(const std::vector<SummaryRow>& rows) {
  std::string out = summary_csv_header() + "\n";
  for (const SummaryRow& r : rows) {
    out += format_double(r.r) + "," + format_double(r.mean_claws) + "," +
           format_double(r.connected_range_pct) + "," + format_double(r.connected_links_pct) +
           "," + format_double(r.claw_free_pct) + "," + format_double(r.mean_transmissions) +
           "," + format_double(r.connected_and_claw_free_pct) + "," +
           std::to_string(r.resamples) + "\n";
  }
  return out;
}

/// Per-bucket scheduler comparison derived from sweep records.
struct BucketRow {
  double bucket_low = 0.0;
  double bucket_high = 0.0;
  int samples = 0;
  double mean_claws = 0.0;
  double mean_ratio_claw_broken_exact = 0.0;   // over trials with both present
  double mean_ratio_claw_broken_greedy = 0.0;  // over trials with claw_broken present
  double mean_ratio_claw_broken_random = 0.0;  // against the random-order maximal set
  double mean_added_edges = 0.0;
  int ratio_exact_samples = 0;
};

enum class BucketBy { kClawCount, kAvgNeighbors };

inline std::vector<BucketRow> bucket_sweep(const std::vector<TrialRecord>& records, BucketBy by,
                                           double width, double max_value) {
  const int buckets = static_cast<int>(std::ceil(max_value / width));
  std::vector<BucketRow> rows(static_cast<std::size_t>(buckets));
  std::vector<double> exact_ratio_sum(static_cast<std::size_t>(buckets), 0.0);
  std::vector<double> greedy_ratio_sum(static_cast<std::size_t>(buckets), 0.0);
  std::vector<double> random_ratio_sum(static_cast<std::size_t>(buckets), 0.0);
  std::vector<int> greedy_ratio_n(static_cast<std::size_t>(buckets), 0);
  for (int b = 0; b < buckets; ++b) {
    rows[static_cast<std::size_t>(b)].bucket_low = b * width;
    rows[static_cast<std::size_t>(b)].bucket_high = (b + 1) * width;
  }
  for (const TrialRecord& r : records) {
    const double key = by == BucketBy::kClawCount ? static_cast<double>(r.claw_count)
                                                  : r.avg_neighbors;
    if (key >= max_value) continue;
    const int b = static_cast<int>(key / width);
    BucketRow& row = rows[static_cast<std::size_t>(b)];
    ++row.samples;
    row.mean_claws += static_cast<double>(r.claw_count);
    row.mean_added_edges += r.added_edge_count;
    if (r.claw_broken_w && r.exact_w && *r.exact_w > 0.0) {
      exact_ratio_sum[static_cast<std::size_t>(b)] += *r.claw_broken_w / *r.exact_w;
      ++row.ratio_exact_samples;
    }
    if (r.claw_broken_w && r.greedy_w > 0.0 && r.random_maximal_w > 0.0) {
      greedy_ratio_sum[static_cast<std::size_t>(b)] += *r.claw_broken_w / r.greedy_w;
      random_ratio_sum[static_cast<std::size_t>(b)] += *r.claw_broken_w / r.random_maximal_w;
      ++greedy_ratio_n[static_cast<std::size_t>(b)];
    }
  }
  for (int b = 0; b < buckets; ++b) {
    BucketRow& row = rows[static_cast<std::size_t>(b)];
    if (row.samples > 0) {
      row.mean_claws /= row.samples;
      row.mean_added_edges /= row.samples;
    }
    if (row.ratio_exact_samples > 0) {
      row.mean_ratio_claw_broken_exact =
          exact_ratio_sum[static_cast<std::size_t>(b)] / row.ratio_exact_samples;
    }
    if (greedy_ratio_n[static_cast<std::size_t>(b)] > 0) {
      row.mean_ratio_claw_broken_greedy =
          greedy_ratio_sum[static_cast<std::size_t>(b)] / greedy_ratio_n[static_cast<std::size_t>(b)];
      row.mean_ratio_claw_broken_random =
          random_ratio_sum[static_cast<std::size_t>(b)] / greedy_ratio_n[static_cast<std::size_t>(b)];
    }
  }
  return rows;
}

inline std::string emit_buckets(const std::vector<BucketRow>& rows) {
  std::string out =
      "bucket_low,bucket_high,samples,mean_claws,ratio_claw_broken_exact,"
      "ratio_claw_broken_greedy,ratio_claw_broken_random,mean_added_edges,"
      "ratio_exact_samples\n";
  for (const BucketRow& r : rows) {
    out += format_double(r.bucket_low) + "," + format_double(r.bucket_high) + "," +
           std::to_string(r.samples) + "," + format_double(r.mean_claws) + "," +
           format_double(r.mean_ratio_claw_broken_exact) + "," +
           format_double(r.mean_ratio_claw_broken_greedy) + "," +
           format_double(r.mean_ratio_claw_broken_random) + "," +
           format_double(r.mean_added_edges) + "," + std::to_string(r.ratio_exact_samples) + "\n";
  }
  return out;
}

/// Plotter-agnostic recipe describing which CSV columns to draw.
inline std::string emit_plot_script(const std::string& csv_name, BucketBy by) {
  std::string x = by == BucketBy::kClawCount ? "claw_count" : "avg_neighbors";
  std::string out;
  out += "# plot recipe\n";
  out += "data: " + csv_name + "\n";
  out += "x: " + x + "\n";
  out += "xlabel: " + (by == BucketBy::kClawCount ? std::string("number of claws")
                                                  : std::string("average neighbors")) + "\n";
  out += "series: exact_w label=optimal\n";
  out += "series: claw_broken_w label=claw-breaking\n";
  out += "series: greedy_w label=maximal-set\n";
  out += "ylabel: schedule weight\n";
  out += "aggregate: mean-by-x-bucket\n";
  return out;
}

}  // namespace clawbreak
