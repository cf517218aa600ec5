// clawbreak: conflict graphs for wireless broadcast networks, claw breaking,
// and schedule experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "clawbreak/clawbreak.hpp"

namespace fs = std::filesystem;
using namespace clawbreak;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

void write_or_print(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_text_file(*path, content);
  } else {
    std::cout << content;
  }
}

Network load_network(const std::string& path) { return network_from_json(read_json_file(path)); }

ConflictGraph load_graph_or_network(const std::optional<std::string>& graph_path,
                                    const std::optional<std::string>& network_path,
                                    WeightRule weights) {
  if (graph_path) return graph_from_json(read_json_file(*graph_path));
  if (network_path) return build_conflict_graph(load_network(*network_path), weights);
  throw SpecViolation("provide --graph or --network");
}

WeightRule parse_weight_rule(const std::string& s) {
  if (s == "receivers") return WeightRule::kReceiverCount;
  if (s == "unit") return WeightRule::kUnit;
  throw SpecViolation("unknown weight rule: " + s);
}

// Flat JSON campaign config; explicit command-line flags win over it.
class ConfigReader {
 public:
  ConfigReader(const std::string& path, const CLI::App* cmd)
      : cfg_(read_json_file(path)), cmd_(cmd) {
    if (!cfg_.is_object()) throw SpecViolation("config must be a JSON object");
    for (const auto& [key, value] : cfg_.items()) {
      if (cmd_->get_option_no_throw("--" + key) == nullptr) {
        throw SpecViolation("config key matches no flag: " + key);
      }
    }
  }

  template <class T>
  void load(const std::string& key, T& target) const {
    if (cmd_->count("--" + key) > 0) return;  // flag given explicitly
    if (cfg_.contains(key)) target = cfg_.at(key).get<T>();
  }

 private:
  Json cfg_;
  const CLI::App* cmd_;
};

struct GenerateArgs {
  std::string family = "random";
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  // random networks
  int n = 10;
  double side = 20.0;
  double range = 7.0;
  std::string rules = "DIRECTIONAL_PROTOCOL";
  double guard = 1e-6;
  int cap = 5;
  // structured families
  std::vector<double> spacings;
  std::vector<int> reach;
  std::vector<int> children;
  std::vector<int> widths;
  std::string variant = "scenario2";
};

int run_generate(const GenerateArgs& a) {
  Network net = [&]() {
    Rng rng(a.seed);
    if (a.family == "random") {
      ScenarioRules rules;
      rules.rule_set = rule_set_from_string(a.rules);
      rules.guard_zone = a.guard;
      rules.neighbor_cap = a.cap;
      return random_network(a.n, a.side, a.range, rules, a.seed);
    }
    if (a.family == "line") {
      if (!a.spacings.empty() || !a.reach.empty()) {
        return line_network(LineSpec{static_cast<int>(a.spacings.size()) + 1, a.spacings,
                                     a.range, a.reach});
      }
      return line_network(random_line_spec(rng, std::min(2, a.n), a.n));
    }
    if (a.family == "tree") {
      const TreeVariant variant = [&] {
        if (a.variant == "scenario2") return TreeVariant::kScenarioII;
        if (a.variant == "fullduplex") return TreeVariant::kFullDuplex;
        throw SpecViolation("unknown tree variant: " + a.variant);
      }();
      if (!a.children.empty()) return tree_network(TreeSpec{variant, a.children}, a.cap);
      return tree_network(random_tree_spec(rng, variant), a.cap);
    }
    if (a.family == "diamond") {
      if (!a.widths.empty()) return diamond_network(DiamondSpec{a.widths});
      return diamond_network(random_diamond_spec(rng));
    }
    throw SpecViolation("unknown family: " + a.family);
  }();
  write_or_print(a.out, to_json(net).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conflict-graph toolkit for wireless broadcast scheduling"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- generate ----
  auto gen = std::make_shared<GenerateArgs>();
  {
    CLI::App* cmd = app.add_subcommand("generate", "write a network JSON file");
    cmd->add_option("--family", gen->family, "line|tree|diamond|random")->required();
    cmd->add_option("--seed", gen->seed, "random seed");
    cmd->add_option("--out", gen->out, "output file (stdout when omitted)");
    cmd->add_option("--n", gen->n, "node count");
    cmd->add_option("--side", gen->side, "area side length");
    cmd->add_option("--range", gen->range, "transmission range r_T");
    cmd->add_option("--rules", gen->rules, "rule set for random networks");
    cmd->add_option("--guard", gen->guard, "protocol guard zone Delta");
    cmd->add_option("--cap", gen->cap, "neighbor cap K");
    cmd->add_option("--spacings", gen->spacings, "explicit line gaps")->delimiter(',');
    cmd->add_option("--reach", gen->reach, "explicit line reach choices (1|2)")->delimiter(',');
    cmd->add_option("--children", gen->children, "tree children per level")->delimiter(',');
    cmd->add_option("--widths", gen->widths, "diamond checkpoint widths")->delimiter(',');
    cmd->add_option("--variant", gen->variant, "tree variant: scenario2|fullduplex");
    cmd->callback([&action, gen]() { action = [gen]() { return run_generate(*gen); }; });
  }

  // ---- build-graph ----
  {
    auto network = std::make_shared<std::optional<std::string>>();
    auto out = std::make_shared<std::optional<std::string>>();
    auto format = std::make_shared<std::string>("json");
    auto weights = std::make_shared<std::string>("receivers");
    CLI::App* cmd = app.add_subcommand("build-graph", "build the conflict graph of a network");
    cmd->add_option("--network", *network, "network JSON file")->required();
    cmd->add_option("--out", *out, "output file (stdout when omitted)");
    cmd->add_option("--format", *format, "json|edgelist");
    cmd->add_option("--weights", *weights, "receivers|unit");
    cmd->callback([&action, network, out, format, weights]() {
      action = [network, out, format, weights]() {
        const ConflictGraph g =
            build_conflict_graph(load_network(**network), parse_weight_rule(*weights));
        if (*format == "json") {
          write_or_print(*out, to_json(g).dump(2) + "\n");
        } else if (*format == "edgelist") {
          write_or_print(*out, to_edge_list(g));
        } else {
          throw SpecViolation("unknown format: " + *format);
        }
        return kExitOk;
      };
    });
  }

  // ---- analyze ----
  {
    auto network = std::make_shared<std::string>();
    auto out = std::make_shared<std::optional<std::string>>();
    auto format = std::make_shared<std::string>("json");
    auto weights = std::make_shared<std::string>("receivers");
    CLI::App* cmd = app.add_subcommand("analyze", "count and attribute claws");
    cmd->add_option("--network", *network, "network JSON file")->required();
    cmd->add_option("--out", *out, "output file (stdout when omitted)");
    cmd->add_option("--format", *format, "json report | csv heat-map attribution");
    cmd->add_option("--weights", *weights, "receivers|unit");
    cmd->callback([&action, network, out, format, weights]() {
      action = [network, out, format, weights]() {
        const Network net = load_network(*network);
        const ConflictGraph g = build_conflict_graph(net, parse_weight_rule(*weights));
        const ClawReport report = analyze_claws(g, net);
        if (*format == "json") {
          write_or_print(*out, to_json(report).dump(2) + "\n");
        } else if (*format == "csv") {
          write_or_print(*out, attribution_to_csv(net, report.attribution));
        } else {
          throw SpecViolation("unknown format: " + *format);
        }
        return kExitOk;
      };
    });
  }

  // ---- break-claws ----
  {
    auto network = std::make_shared<std::optional<std::string>>();
    auto graph = std::make_shared<std::optional<std::string>>();
    auto out = std::make_shared<std::optional<std::string>>();
    auto graph_out = std::make_shared<std::optional<std::string>>();
    auto seed = std::make_shared<std::uint64_t>(1);
    auto trace = std::make_shared<bool>(false);
    auto weights = std::make_shared<std::string>("receivers");
    CLI::App* cmd = app.add_subcommand("break-claws", "insert edges until the graph is claw-free");
    cmd->add_option("--network", *network, "network JSON file");
    cmd->add_option("--graph", *graph, "conflict graph JSON file");
    cmd->add_option("--out", *out, "result file (stdout when omitted)");
    cmd->add_option("--graph-out", *graph_out, "also write the claw-free graph JSON");
    cmd->add_option("--seed", *seed, "tie-sampling seed");
    cmd->add_flag("--trace", *trace, "record one row per inserted edge");
    cmd->add_option("--weights", *weights, "receivers|unit");
    cmd->callback([&action, network, graph, out, graph_out, seed, trace, weights]() {
      action = [network, graph, out, graph_out, seed, trace, weights]() {
        const ConflictGraph g = load_graph_or_network(*graph, *network, parse_weight_rule(*weights));
        ClawFreeOptions options;
        options.record_trace = *trace;
        const ClawFreeResult res = make_claw_free(g, *seed, options);
        write_or_print(*out, to_json(res, *trace).dump(2) + "\n");
        if (*graph_out) write_text_file(**graph_out, to_json(res.graph).dump(2) + "\n");
        return kExitOk;
      };
    });
  }

  // ---- schedule ----
  {
    auto mode = std::make_shared<std::string>();
    auto network = std::make_shared<std::optional<std::string>>();
    auto graph = std::make_shared<std::optional<std::string>>();
    auto out = std::make_shared<std::optional<std::string>>();
    auto seed = std::make_shared<std::uint64_t>(1);
    auto budget = std::make_shared<long long>(100'000'000);
    auto weights = std::make_shared<std::string>("receivers");
    CLI::App* cmd = app.add_subcommand("schedule", "compute a one-slot schedule");
    cmd->add_option("mode", *mode, "exact|greedy|claw-broken|mixed")->required();
    cmd->add_option("--network", *network, "network JSON file");
    cmd->add_option("--graph", *graph, "conflict graph JSON file");
    cmd->add_option("--out", *out, "schedule file (stdout when omitted)");
    cmd->add_option("--seed", *seed, "seed for randomized stages");
    cmd->add_option("--budget", *budget, "exact-search node budget");
    cmd->add_option("--weights", *weights, "receivers|unit");
    cmd->callback([&action, mode, network, graph, out, seed, budget, weights]() {
      action = [mode, network, graph, out, seed, budget, weights]() {
        const WeightRule wr = parse_weight_rule(*weights);
        const MwisOptions mwis{*budget};
        IndependentSet s;
        ConflictGraph g;
        if (*mode == "mixed") {
          if (!*network) throw SpecViolation("schedule mixed requires --network");
          const Network net = load_network(**network);
          g = build_conflict_graph(net, wr);
          const Partition p = derive_claw_partition(g, net);
          MixedOptions options;
          options.mwis = mwis;
          s = mixed_schedule(g, net, p, *seed, options);
        } else {
          g = load_graph_or_network(*graph, *network, wr);
          if (*mode == "exact") {
            s = exact_mwis(g, mwis);
          } else if (*mode == "greedy") {
            s = greedy_maximal_is(g);
          } else if (*mode == "claw-broken") {
            s = claw_broken_schedule(g, *seed, mwis);
          } else {
            throw SpecViolation("unknown schedule mode: " + *mode);
          }
        }
        write_or_print(*out, to_json(g, s).dump(2) + "\n");
        return kExitOk;
      };
    });
  }

  // ---- experiment ----
  {
    CLI::App* cmd = app.add_subcommand("experiment", "run a Monte-Carlo campaign");
    cmd->require_subcommand(1);

    auto t1 = std::make_shared<Table1Params>();
    auto t1_out = std::make_shared<std::string>(".");
    auto t1_config = std::make_shared<std::string>();
    CLI::App* table1 = cmd->add_subcommand("table1", "claw statistics per transmission range");
    table1->add_option("--config", *t1_config, "JSON config mirroring these flags");
    table1->add_option("--n", t1->n, "node count");
    table1->add_option("--side", t1->side, "area side length");
    table1->add_option("--r-list", t1->r_list, "transmission ranges")->delimiter(',');
    table1->add_option("--trials", t1->trials, "trials per range");
    table1->add_option("--seed", t1->seed, "campaign seed");
    table1->add_option("--jobs", t1->jobs, "worker threads");
    table1->add_option("--out", *t1_out, "output directory");
    table1->callback([&action, t1, t1_out, t1_config, table1]() {
      action = [t1, t1_out, t1_config, table1]() {
        if (!t1_config->empty()) {
          const ConfigReader cfg(*t1_config, table1);
          cfg.load("n", t1->n);
          cfg.load("side", t1->side);
          cfg.load("r-list", t1->r_list);
          cfg.load("trials", t1->trials);
          cfg.load("seed", t1->seed);
          cfg.load("jobs", t1->jobs);
          cfg.load("out", *t1_out);
        }
        fs::create_directories(*t1_out);
        const auto rows = run_table1(*t1);
        write_text_file(*t1_out + "/table1_summary.csv", emit_summary(rows));
        write_text_file(*t1_out + "/table1_plot.txt",
                        emit_plot_script("table1_summary.csv", BucketBy::kClawCount));
        std::printf("wrote %s/table1_summary.csv (%zu rows)\n", t1_out->c_str(), rows.size());
        return kExitOk;
      };
    });

    auto sw = std::make_shared<SweepParams>();
    auto sw_out = std::make_shared<std::string>(".");
    auto sw_config = std::make_shared<std::string>();
    auto sw_timings = std::make_shared<bool>(false);
    auto sw_bucket = std::make_shared<std::string>("claws");
    auto sw_bucket_width = std::make_shared<double>(25.0);
    auto sw_bucket_max = std::make_shared<double>(400.0);
    CLI::App* sweep = cmd->add_subcommand("sweep", "scheduler comparison per random instance");
    sweep->add_option("--config", *sw_config, "JSON config mirroring these flags");
    sweep->add_option("--n", sw->n, "node count");
    sweep->add_option("--side", sw->side, "area side length");
    sweep->add_option("--r-choices", sw->r_choices, "ranges drawn per trial")->delimiter(',');
    sweep->add_option("--trials", sw->trials, "trial count");
    sweep->add_option("--seed", sw->seed, "campaign seed");
    sweep->add_option("--jobs", sw->jobs, "worker threads");
    sweep->add_option("--budget", sw->budget, "exact-search node budget");
    sweep->add_flag("--with-exact,!--no-exact", sw->with_exact, "solve the original graph exactly");
    sweep->add_flag("--with-mixed", sw->with_mixed, "also run the mixed scheduler");
    sweep->add_flag("--timings", *sw_timings, "append wall-clock columns to the CSV");
    sweep->add_option("--bucket-by", *sw_bucket, "claws|neighbors");
    sweep->add_option("--bucket-width", *sw_bucket_width, "bucket width");
    sweep->add_option("--bucket-max", *sw_bucket_max, "largest bucketed value");
    sweep->add_option("--out", *sw_out, "output directory");
    sweep->callback([&action, sw, sw_out, sw_config, sw_timings, sw_bucket, sw_bucket_width,
                     sw_bucket_max, sweep]() {
      action = [sw, sw_out, sw_config, sw_timings, sw_bucket, sw_bucket_width, sw_bucket_max,
                sweep]() {
        if (!sw_config->empty()) {
          const ConfigReader cfg(*sw_config, sweep);
          cfg.load("n", sw->n);
          cfg.load("side", sw->side);
          cfg.load("r-choices", sw->r_choices);
          cfg.load("trials", sw->trials);
          cfg.load("seed", sw->seed);
          cfg.load("jobs", sw->jobs);
          cfg.load("budget", sw->budget);
          cfg.load("with-exact", sw->with_exact);
          cfg.load("with-mixed", sw->with_mixed);
          cfg.load("timings", *sw_timings);
          cfg.load("bucket-by", *sw_bucket);
          cfg.load("bucket-width", *sw_bucket_width);
          cfg.load("bucket-max", *sw_bucket_max);
          cfg.load("out", *sw_out);
        }
        const BucketBy by = [&] {
          if (*sw_bucket == "claws") return BucketBy::kClawCount;
          if (*sw_bucket == "neighbors") return BucketBy::kAvgNeighbors;
          throw SpecViolation("unknown bucket key: " + *sw_bucket);
        }();
        fs::create_directories(*sw_out);
        const auto records = run_performance_sweep(*sw);
        write_text_file(*sw_out + "/sweep_trials.csv", emit_csv(records, *sw_timings));
        write_text_file(*sw_out + "/sweep_buckets.csv",
                        emit_buckets(bucket_sweep(records, by, *sw_bucket_width, *sw_bucket_max)));
        write_text_file(*sw_out + "/sweep_plot.txt", emit_plot_script("sweep_trials.csv", by));
        std::printf("wrote %s/sweep_trials.csv (%zu trials)\n", sw_out->c_str(), records.size());
        return kExitOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
    return action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  }
}
